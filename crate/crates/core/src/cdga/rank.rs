//! Degree-indexed tables of nonnegative integers.

/// Ranks per degree, defined exactly for degrees `0..=cutoff`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTable {
    cutoff: u32,
    ranks: Vec<usize>,
}

impl RankTable {
    /// Build from a dense vector; `ranks[q]` is the rank in degree q.
    pub fn new(cutoff: u32, ranks: Vec<usize>) -> Self {
        assert_eq!(ranks.len(), cutoff as usize + 1, "one rank per degree");
        RankTable { cutoff, ranks }
    }

    pub fn zeros(cutoff: u32) -> Self {
        RankTable {
            cutoff,
            ranks: vec![0; cutoff as usize + 1],
        }
    }

    /// Build from (degree, rank) pairs; unmentioned degrees are zero.
    pub fn from_pairs(cutoff: u32, pairs: &[(u32, usize)]) -> Self {
        let mut t = RankTable::zeros(cutoff);
        for &(q, r) in pairs {
            assert!(q <= cutoff, "degree {} beyond cutoff {}", q, cutoff);
            t.ranks[q as usize] = r;
        }
        t
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    /// Rank in degree q; panics above the cutoff.
    pub fn rank(&self, q: u32) -> usize {
        self.ranks[q as usize]
    }

    pub fn get(&self, q: u32) -> Option<usize> {
        self.ranks.get(q as usize).copied()
    }

    pub(crate) fn set(&mut self, q: u32, r: usize) {
        self.ranks[q as usize] = r;
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, usize)> + '_ {
        self.ranks.iter().enumerate().map(|(q, &r)| (q as u32, r))
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Largest degree with nonzero rank, if any.
    pub fn top_nonzero(&self) -> Option<u32> {
        self.iter().filter(|&(_, r)| r > 0).map(|(q, _)| q).last()
    }

    pub fn is_zero_above(&self, n: u32) -> bool {
        self.iter().all(|(q, r)| q <= n || r == 0)
    }
}

impl std::fmt::Display for RankTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut top = String::from("degree");
        let mut bottom = String::from("rank  ");
        for (q, r) in self.iter() {
            let w = q.to_string().len().max(r.to_string().len());
            top.push_str(&format!("  {:>w$}", q, w = w));
            bottom.push_str(&format!("  {:>w$}", r, w = w));
        }
        writeln!(f, "{}", top)?;
        write!(f, "{}", bottom)
    }
}
