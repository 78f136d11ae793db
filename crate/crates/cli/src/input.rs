//! Text descriptions of algebras.
//!
//! A description file is a list of directives, one per line; `#` starts a
//! comment and blank lines are ignored.  Two kinds of description exist and
//! the directives decide which one a file is:
//!
//! * free kind — `gen v : 4` declares a free generator, `d w = v^2` assigns
//!   its differential (default zero);
//! * finite-basis kind — `basis x : 2` declares a basis element (the unit is
//!   implicit), `mul x x = x2` sets a product, and `d x = y` sets a
//!   differential, both as linear combinations of basis names.
//!
//! Mixing `gen` with `basis`/`mul` in one file is an error; a file with no
//! directives describes the one-point algebra.  Coefficients are exact
//! rationals written `p/q` or as integers; monomials use `*` and `^`.

use std::fmt;
use std::sync::Arc;

use num::{BigInt, One, Zero};
use sullivan::cdga::{Cdga, FinVec, FiniteBuilder, FiniteCdga, SullivanAlgebra};
use sullivan::gca::{Derivation, GenSet, Monomial, Normalized, Polynomial, Rational};

/// A syntax or semantic error located at a 1-based line of the input.
#[derive(Debug, Clone)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
    /// False for malformed text; true when well-formed directives denote an
    /// impossible algebra (wrong degree, unknown name, duplicate value).
    pub semantic: bool,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

/// The algebra a description denotes.
#[derive(Debug, Clone)]
pub enum Algebra {
    /// Free graded-commutative algebra on named generators.
    Free(Arc<SullivanAlgebra>),
    /// Finite-basis algebra with explicit product and differential tables.
    Finite(Arc<FiniteCdga>),
}

/// A parsed description: the space's name (the file stem) and its algebra.
#[derive(Debug, Clone)]
pub struct SpaceDescription {
    pub name: String,
    pub algebra: Algebra,
}

impl SpaceDescription {
    /// Regenerate the description in canonical form: declarations in basis
    /// order, then nonzero products (lower index first), then nonzero
    /// differentials.  Parsing the output reproduces the same algebra.
    pub fn print(&self) -> String {
        let mut out = String::new();
        match &self.algebra {
            Algebra::Free(m) => {
                for g in m.gens().iter() {
                    out.push_str(&format!("gen {} : {}\n", g.name(), g.degree()));
                }
                for g in m.gens().iter() {
                    let v = m.diff().value(g);
                    if !v.is_zero() {
                        out.push_str(&format!("d {} = {}\n", g.name(), v));
                    }
                }
            }
            Algebra::Finite(a) => {
                for i in 1..a.dim() {
                    out.push_str(&format!("basis {} : {}\n", a.name(i), a.degree(i)));
                }
                for i in 1..a.dim() {
                    for j in i..a.dim() {
                        let p = a.product_of(i, j);
                        if p.iter().any(|c| !c.is_zero()) {
                            out.push_str(&format!(
                                "mul {} {} = {}\n",
                                a.name(i),
                                a.name(j),
                                a.display_elem(p)
                            ));
                        }
                    }
                }
                for i in 1..a.dim() {
                    let v = a.diff_of(i);
                    if v.iter().any(|c| !c.is_zero()) {
                        out.push_str(&format!("d {} = {}\n", a.name(i), a.display_elem(v)));
                    }
                }
            }
        }
        out
    }
}

/// One additive term: a coefficient and a list of (name, exponent) factors.
type Term = (Rational, Vec<(String, u32)>);

#[derive(Debug)]
enum Directive {
    Gen { name: String, degree: u32 },
    Basis { name: String, degree: u32 },
    Diff { name: String, terms: Vec<Term> },
    Mul { left: String, right: String, terms: Vec<Term> },
}

/// Parse a description; `name` is reported back in [`SpaceDescription`].
pub fn parse(name: &str, text: &str) -> Result<SpaceDescription, ParseError> {
    let mut directives = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let stripped = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let stripped = stripped.trim();
        if stripped.is_empty() {
            continue;
        }
        directives.push((line, parse_directive(line, stripped)?));
    }

    let first_gen = directives
        .iter()
        .find(|(_, d)| matches!(d, Directive::Gen { .. }))
        .map(|(l, _)| *l);
    let first_basis = directives
        .iter()
        .find(|(_, d)| matches!(d, Directive::Basis { .. } | Directive::Mul { .. }))
        .map(|(l, _)| *l);
    let algebra = match (first_gen, first_basis) {
        (Some(lg), Some(lb)) => {
            return Err(ParseError {
                line: lg.max(lb),
                message: "cannot mix 'gen' with 'basis'/'mul' in one description".to_string(),
                semantic: false,
            });
        }
        (Some(_), None) => Algebra::Free(build_free(&directives)?),
        _ => Algebra::Finite(build_finite(&directives)?),
    };
    Ok(SpaceDescription {
        name: name.to_string(),
        algebra,
    })
}

fn parse_directive(line: usize, text: &str) -> Result<Directive, ParseError> {
    let err = |message: String| ParseError {
        line,
        message,
        semantic: false,
    };
    let head = text.split_whitespace().next().unwrap_or_default();
    match head {
        "gen" | "basis" => {
            let rest = text[head.len()..].trim();
            let (name, degree) = rest.split_once(':').ok_or_else(|| {
                err(format!("expected '{} <name> : <degree>'", head))
            })?;
            let name = valid_name(line, name.trim())?;
            let degree: u32 = degree.trim().parse().map_err(|_| {
                err(format!("invalid degree '{}'", degree.trim()))
            })?;
            if head == "gen" {
                Ok(Directive::Gen { name, degree })
            } else {
                Ok(Directive::Basis { name, degree })
            }
        }
        "d" => {
            let rest = text[1..].trim();
            let (name, value) = rest
                .split_once('=')
                .ok_or_else(|| err("expected 'd <name> = <value>'".to_string()))?;
            let name = valid_name(line, name.trim())?;
            let terms = parse_terms(value).map_err(|m| err(m))?;
            Ok(Directive::Diff { name, terms })
        }
        "mul" => {
            let rest = text[3..].trim();
            let (pair, value) = rest
                .split_once('=')
                .ok_or_else(|| err("expected 'mul <a> <b> = <value>'".to_string()))?;
            let mut names = pair.split_whitespace();
            let left = names
                .next()
                .ok_or_else(|| err("expected two basis names before '='".to_string()))?;
            let right = names
                .next()
                .ok_or_else(|| err("expected two basis names before '='".to_string()))?;
            if names.next().is_some() {
                return Err(err("expected exactly two basis names before '='".to_string()));
            }
            let left = valid_name(line, left)?;
            let right = valid_name(line, right)?;
            let terms = parse_terms(value).map_err(|m| err(m))?;
            Ok(Directive::Mul { left, right, terms })
        }
        _ => Err(err(format!(
            "unknown directive '{}'; expected gen, basis, mul, or d",
            head
        ))),
    }
}

fn valid_name(line: usize, name: &str) -> Result<String, ParseError> {
    let mut chars = name.chars();
    let ok = match chars.next() {
        Some(c) => {
            (c.is_ascii_alphabetic() || c == '_')
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        }
        None => false,
    };
    if ok {
        Ok(name.to_string())
    } else {
        Err(ParseError {
            line,
            message: format!(
                "invalid name '{}'; names start with a letter or '_' and use letters, digits, '_'",
                name
            ),
            semantic: false,
        })
    }
}

fn build_free(directives: &[(usize, Directive)]) -> Result<Arc<SullivanAlgebra>, ParseError> {
    let mut gens = GenSet::new();
    for (line, d) in directives {
        if let Directive::Gen { name, degree } = d {
            gens.add(name, *degree).map_err(|e| ParseError {
                line: *line,
                message: e.to_string(),
                semantic: true,
            })?;
        }
    }
    let mut diff = Derivation::new(1);
    let mut assigned = Vec::new();
    for (line, d) in directives {
        if let Directive::Diff { name, terms } = d {
            let err = |message: String| ParseError {
                line: *line,
                message,
                semantic: true,
            };
            let g = gens
                .by_name(name)
                .cloned()
                .ok_or_else(|| err(format!("unknown generator '{}'", name)))?;
            if assigned.contains(name) {
                return Err(err(format!("differential of '{}' was already given", name)));
            }
            assigned.push(name.clone());
            let value = realize_polynomial(terms, &gens).map_err(err)?;
            diff.set(&g, value).map_err(|e| err(e.to_string()))?;
        }
    }
    let alg = SullivanAlgebra::new(gens, diff).map_err(|e| ParseError {
        line: 1,
        message: e.to_string(),
        semantic: true,
    })?;
    Ok(Arc::new(alg))
}

fn build_finite(directives: &[(usize, Directive)]) -> Result<Arc<FiniteCdga>, ParseError> {
    let mut builder = FiniteBuilder::new();
    for (line, d) in directives {
        if let Directive::Basis { name, degree } = d {
            builder.add_basis(name, *degree).map_err(|e| ParseError {
                line: *line,
                message: e.to_string(),
                semantic: true,
            })?;
        }
    }
    let dim = directives
        .iter()
        .filter(|(_, d)| matches!(d, Directive::Basis { .. }))
        .count()
        + 1;
    let mut seen_products: Vec<(usize, usize)> = Vec::new();
    let mut seen_diffs: Vec<usize> = Vec::new();
    for (line, d) in directives {
        let err = |message: String| ParseError {
            line: *line,
            message,
            semantic: true,
        };
        match d {
            Directive::Mul { left, right, terms } => {
                let i = builder
                    .index_of(left)
                    .filter(|&i| i > 0)
                    .ok_or_else(|| err(format!("unknown basis element '{}'", left)))?;
                let j = builder
                    .index_of(right)
                    .filter(|&j| j > 0)
                    .ok_or_else(|| err(format!("unknown basis element '{}'", right)))?;
                if seen_products.contains(&(i, j)) {
                    return Err(err(format!(
                        "product {}*{} was already given",
                        left, right
                    )));
                }
                seen_products.push((i, j));
                let value = realize_combination(terms, &builder, dim).map_err(err)?;
                builder.set_product(i, j, value);
            }
            Directive::Diff { name, terms } => {
                let i = builder
                    .index_of(name)
                    .filter(|&i| i > 0)
                    .ok_or_else(|| err(format!("unknown basis element '{}'", name)))?;
                if seen_diffs.contains(&i) {
                    return Err(err(format!("differential of '{}' was already given", name)));
                }
                seen_diffs.push(i);
                let value = realize_combination(terms, &builder, dim).map_err(err)?;
                builder.set_diff(i, value);
            }
            _ => {}
        }
    }
    let alg = builder.build().map_err(|e| ParseError {
        line: 1,
        message: e.to_string(),
        semantic: true,
    })?;
    Ok(Arc::new(alg))
}

/// Parse an additive expression over a known generator set, e.g. a Massey
/// input on the command line.
pub fn parse_over(text: &str, gens: &GenSet) -> Result<Polynomial, String> {
    let terms = parse_terms(text)?;
    realize_polynomial(&terms, gens)
}

fn realize_polynomial(terms: &[Term], gens: &GenSet) -> Result<Polynomial, String> {
    let mut out = Polynomial::zero();
    for (coeff, factors) in terms {
        let mut resolved = Vec::with_capacity(factors.len());
        for (name, exp) in factors {
            let g = gens
                .by_name(name)
                .cloned()
                .ok_or_else(|| format!("unknown generator '{}'", name))?;
            resolved.push((g, *exp));
        }
        let term = match Monomial::normalize(&resolved) {
            Normalized::Zero => Polynomial::zero(),
            Normalized::Term(m, sign) => {
                let c = if sign < 0 { -coeff.clone() } else { coeff.clone() };
                Polynomial::from_term(m, c)
            }
        };
        out = out.add(&term);
    }
    Ok(out)
}

fn realize_combination(
    terms: &[Term],
    builder: &FiniteBuilder,
    dim: usize,
) -> Result<FinVec, String> {
    let mut out = vec![Rational::zero(); dim];
    for (coeff, factors) in terms {
        match factors.as_slice() {
            [] => out[0] += coeff,
            [(name, 1)] => {
                let i = builder
                    .index_of(name)
                    .ok_or_else(|| format!("unknown basis element '{}'", name))?;
                out[i] += coeff;
            }
            _ => {
                return Err(
                    "values must be linear combinations of basis names; \
                     declare products of basis elements with 'mul' instead"
                        .to_string(),
                )
            }
        }
    }
    Ok(out)
}

#[derive(Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(text: &str) -> Result<Vec<Token>, String> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let word_char = |c: char| c.is_alphanumeric() || c == '_' || c == '⊗';
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if word_char(c) {
            let mut word = String::new();
            while let Some(&c) = chars.peek() {
                if word_char(c) {
                    word.push(c);
                    chars.next();
                } else {
                    break;
                }
            }
            if word.chars().all(|c| c.is_ascii_digit()) {
                tokens.push(Token::Int(word.parse().expect("digit run")));
            } else {
                tokens.push(Token::Name(word));
            }
        } else {
            chars.next();
            tokens.push(match c {
                '+' => Token::Plus,
                '-' => Token::Minus,
                '*' => Token::Star,
                '/' => Token::Slash,
                '^' => Token::Caret,
                _ => return Err(format!("unexpected character '{}'", c)),
            });
        }
    }
    Ok(tokens)
}

/// Parse an additive expression into signed terms without resolving names.
fn parse_terms(text: &str) -> Result<Vec<Term>, String> {
    let tokens = tokenize(text)?;
    let mut pos = 0;
    let mut terms = Vec::new();
    if tokens.is_empty() {
        return Err("expected an expression".to_string());
    }
    let mut negate = match tokens.first() {
        Some(Token::Minus) => {
            pos += 1;
            true
        }
        _ => false,
    };
    loop {
        let (coeff, factors) = parse_term(&tokens, &mut pos)?;
        let coeff = if negate { -coeff } else { coeff };
        terms.push((coeff, factors));
        match tokens.get(pos) {
            None => break,
            Some(Token::Plus) => {
                negate = false;
                pos += 1;
            }
            Some(Token::Minus) => {
                negate = true;
                pos += 1;
            }
            Some(t) => return Err(format!("expected '+' or '-', found {}", describe(t))),
        }
    }
    Ok(terms)
}

fn parse_term(tokens: &[Token], pos: &mut usize) -> Result<Term, String> {
    let mut coeff = Rational::one();
    let mut need_factors = true;
    if let Some(Token::Int(n)) = tokens.get(*pos) {
        let mut value = Rational::from(n.clone());
        *pos += 1;
        if let Some(Token::Slash) = tokens.get(*pos) {
            *pos += 1;
            match tokens.get(*pos) {
                Some(Token::Int(d)) if !d.is_zero() => {
                    value /= Rational::from(d.clone());
                    *pos += 1;
                }
                Some(Token::Int(_)) => return Err("division by zero".to_string()),
                t => return Err(format!("expected a denominator, found {}", describe_opt(t))),
            }
        }
        coeff = value;
        if let Some(Token::Star) = tokens.get(*pos) {
            *pos += 1;
        } else {
            need_factors = false;
        }
    }
    let mut factors = Vec::new();
    if need_factors {
        loop {
            match tokens.get(*pos) {
                Some(Token::Name(name)) => {
                    *pos += 1;
                    let mut exp = 1u32;
                    if let Some(Token::Caret) = tokens.get(*pos) {
                        *pos += 1;
                        match tokens.get(*pos) {
                            Some(Token::Int(n)) => {
                                exp = u32::try_from(n.clone())
                                    .map_err(|_| "exponent out of range".to_string())?;
                                *pos += 1;
                            }
                            t => {
                                return Err(format!(
                                    "expected an exponent, found {}",
                                    describe_opt(t)
                                ))
                            }
                        }
                    }
                    factors.push((name.clone(), exp));
                }
                t => {
                    return Err(format!(
                        "expected a generator name, found {}",
                        describe_opt(t)
                    ))
                }
            }
            if let Some(Token::Star) = tokens.get(*pos) {
                *pos += 1;
            } else {
                break;
            }
        }
    }
    Ok((coeff, factors))
}

fn describe(t: &Token) -> String {
    match t {
        Token::Int(n) => format!("'{}'", n),
        Token::Name(n) => format!("'{}'", n),
        Token::Plus => "'+'".to_string(),
        Token::Minus => "'-'".to_string(),
        Token::Star => "'*'".to_string(),
        Token::Slash => "'/'".to_string(),
        Token::Caret => "'^'".to_string(),
    }
}

fn describe_opt(t: Option<&Token>) -> String {
    match t {
        Some(t) => describe(t),
        None => "end of expression".to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sullivan::gca::rat;

    fn free(text: &str) -> Arc<SullivanAlgebra> {
        match parse("t", text).unwrap().algebra {
            Algebra::Free(m) => m,
            Algebra::Finite(_) => panic!("expected a free description"),
        }
    }

    fn finite(text: &str) -> Arc<FiniteCdga> {
        match parse("t", text).unwrap().algebra {
            Algebra::Finite(a) => a,
            Algebra::Free(_) => panic!("expected a finite-basis description"),
        }
    }

    #[test]
    fn sphere_model_parses() {
        let m = free("gen v : 4\ngen w : 7\nd w = v^2\n");
        let v = m.gens().by_name("v").unwrap().clone();
        let w = m.gens().by_name("w").unwrap().clone();
        assert_eq!(v.degree(), 4);
        let dw = m.diff().value(&w);
        assert_eq!(dw, Polynomial::generator(&v).try_pow(2).unwrap());
        assert!(m.diff().value(&v).is_zero());
    }

    #[test]
    fn coefficients_signs_and_comments_parse() {
        let m = free(
            "# a four-generator example\n\
             gen a : 2\n\
             gen b : 3  # odd, unused below\n\
             gen u : 4\n\
             gen c : 5\n\
             d c = -1/2*a^3 + 2*a*u\n",
        );
        let a = m.gens().by_name("a").unwrap().clone();
        let u = m.gens().by_name("u").unwrap().clone();
        let c = m.gens().by_name("c").unwrap().clone();
        let expected = Polynomial::generator(&a)
            .try_pow(3)
            .unwrap()
            .scale(&sullivan::gca::ratio(-1, 2))
            .add(
                &Polynomial::generator(&a)
                    .try_mul(&Polynomial::generator(&u))
                    .unwrap()
                    .scale(&rat(2)),
            );
        assert_eq!(m.diff().value(&c), expected);
    }

    #[test]
    fn finite_basis_description_parses() {
        let a = finite(
            "basis x : 2\n\
             basis x2 : 4\n\
             mul x x = x2\n",
        );
        assert_eq!(a.dim(), 3);
        let i = a.index_of("x").unwrap();
        let j = a.index_of("x2").unwrap();
        assert_eq!(a.product_of(i, i), &a.basis_vec(j));
        assert!(a.validate().is_ok());
    }

    #[test]
    fn empty_description_is_a_point() {
        let a = finite("# nothing but comments\n");
        assert_eq!(a.dim(), 1);
        assert!(a.validate().is_ok());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse("t", "gen v : 4\nd v = v\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse("t", "gen v : 4\nbasis x : 2\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse("t", "gen v : 4\nd w = v\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("unknown generator 'w'"));
        let e = parse("t", "jen v : 4\n").unwrap_err();
        assert_eq!(e.line, 1);
    }

    #[test]
    fn degree_errors_are_semantic_not_syntactic() {
        // a*b has degree 6, so it cannot be the differential of a degree-3
        // generator; the parser reports this on the offending line.
        let e = parse("t", "gen a : 3\ngen b : 3\nd b = -1/2*a*b\n").unwrap_err();
        assert_eq!(e.line, 3);
    }

    #[test]
    fn round_trip_is_stable_for_free_descriptions() {
        let text = "gen v : 4\ngen w : 7\nd w = -1/2*v^2\n";
        let d = parse("t", text).unwrap();
        let printed = d.print();
        let d2 = parse("t", &printed).unwrap();
        let (m1, m2) = match (&d.algebra, &d2.algebra) {
            (Algebra::Free(a), Algebra::Free(b)) => (a.clone(), b.clone()),
            _ => panic!("kind changed in round trip"),
        };
        let names1: Vec<_> = m1.gens().iter().map(|g| (g.name().to_string(), g.degree())).collect();
        let names2: Vec<_> = m2.gens().iter().map(|g| (g.name().to_string(), g.degree())).collect();
        assert_eq!(names1, names2);
        for (g1, g2) in m1.gens().iter().zip(m2.gens().iter()) {
            assert_eq!(
                format!("{}", m1.diff().value(g1)),
                format!("{}", m2.diff().value(g2))
            );
        }
        assert_eq!(printed, parse("t", &printed).unwrap().print());
    }

    #[test]
    fn round_trip_is_stable_for_finite_descriptions() {
        let text = "basis x : 2\nbasis y : 3\nbasis x2 : 4\nmul x x = x2\nd y = x\n";
        let d = parse("t", text).unwrap();
        let printed = d.print();
        let d2 = parse("t", &printed).unwrap();
        let (a1, a2) = match (&d.algebra, &d2.algebra) {
            (Algebra::Finite(a), Algebra::Finite(b)) => (a.clone(), b.clone()),
            _ => panic!("kind changed in round trip"),
        };
        assert_eq!(*a1, *a2);
        assert_eq!(printed, d2.print());
    }

    #[test]
    fn mirrored_products_fill_in_by_commutativity() {
        let a = finite(
            "basis u : 3\n\
             basis v : 4\n\
             basis w : 7\n\
             mul u v = w\n",
        );
        let (i, j, k) = (
            a.index_of("u").unwrap(),
            a.index_of("v").unwrap(),
            a.index_of("w").unwrap(),
        );
        assert_eq!(a.product_of(i, j), &a.basis_vec(k));
        // |u||v| = 12 is even, so v*u = u*v.
        assert_eq!(a.product_of(j, i), &a.basis_vec(k));
    }

    #[test]
    fn expressions_reject_malformed_input() {
        assert!(parse_terms("v +").is_err());
        assert!(parse_terms("^2").is_err());
        assert!(parse_terms("1/0*v").is_err());
        assert!(parse_terms("v ** w").is_err());
        assert!(parse_terms("").is_err());
        assert!(parse_terms("3 v").is_err());
    }

    #[test]
    fn zero_and_constant_values_parse() {
        let m = free("gen a : 2\ngen b : 3\nd b = 0\n");
        let b = m.gens().by_name("b").unwrap().clone();
        assert!(m.diff().value(&b).is_zero());
        let a = finite("basis x : 2\nbasis y : 2\nmul x y = 0\n");
        let (i, j) = (a.index_of("x").unwrap(), a.index_of("y").unwrap());
        assert!(a.product_of(i, j).iter().all(|c| c.is_zero()));
    }

    #[test]
    fn linear_values_only_in_finite_descriptions() {
        let e = parse("t", "basis x : 2\nd x = x^2\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("linear"));
    }
}
