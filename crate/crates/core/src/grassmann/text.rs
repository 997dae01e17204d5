//! Text form of Grassmann elements: `3/2*x1x3 - i*x2`, `(1/2+i)*x1`, `0`.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::Scalar;

use super::element::{indices, GrassmannElement};

impl GrassmannElement {
    /// Parses an element of Λ(n). Generators may appear in any order, e.g.
    /// `x2x1` reads as `-x1x2`.
    pub fn parse(n: usize, s: &str) -> Result<GrassmannElement> {
        super::element::check_n(n)?;
        let compact = strip_spaces(s)?;
        let b = compact.as_bytes();
        if b.is_empty() {
            return Err(Error::Parse("empty Grassmann element".into()));
        }
        let mut out = GrassmannElement::zero(n);
        let mut pos = 0;
        let mut first = true;
        while pos < b.len() {
            let mut negative = false;
            if b[pos] == b'+' || b[pos] == b'-' {
                negative = b[pos] == b'-';
                pos += 1;
            } else if !first {
                return Err(Error::Parse(format!("expected + or - at byte {pos}")));
            }
            first = false;
            let (term, used) = parse_term(n, &compact[pos..])?;
            pos += used;
            out = out.add(&if negative { term.neg() } else { term })?;
        }
        Ok(out)
    }
}

/// Removes whitespace, which is only accepted next to a `+` or `-`.
fn strip_spaces(s: &str) -> Result<String> {
    let chars: Vec<char> = s.trim().chars().collect();
    let mut out = String::with_capacity(chars.len());
    for (k, &c) in chars.iter().enumerate() {
        if !c.is_whitespace() {
            out.push(c);
            continue;
        }
        let next = chars[k..].iter().find(|c| !c.is_whitespace());
        let prev = out.chars().last();
        let at_sign = |c: Option<char>| matches!(c, Some('+') | Some('-'));
        if !at_sign(prev) && !at_sign(next.copied()) {
            return Err(Error::Parse(format!("unexpected space at character {k}")));
        }
    }
    Ok(out)
}

fn parse_term(n: usize, s: &str) -> Result<(GrassmannElement, usize)> {
    let b = s.as_bytes();
    let mut pos = 0;
    let coeff = match b.first() {
        None => return Err(Error::Parse("missing term".into())),
        Some(b'x') => Scalar::one(),
        Some(b'(') => {
            let close = s
                .find(')')
                .ok_or_else(|| Error::Parse("unclosed parenthesis".into()))?;
            pos = close + 1;
            s[1..close].parse::<Scalar>()?
        }
        Some(b'+') | Some(b'-') => return Err(Error::Parse("repeated sign".into())),
        Some(_) => {
            let (c, used) = Scalar::parse_atom_prefix(s)?;
            pos = used;
            c
        }
    };
    let has_star = b.get(pos) == Some(&b'*');
    if has_star {
        pos += 1;
    }
    let mut word = Vec::new();
    while b.get(pos) == Some(&b'x') {
        let start = pos + 1;
        let mut end = start;
        while end < b.len() && b[end].is_ascii_digit() {
            end += 1;
        }
        if end == start {
            return Err(Error::Parse(format!("generator without index at byte {pos}")));
        }
        let i: usize = s[start..end]
            .parse()
            .map_err(|_| Error::Parse(format!("bad generator index {:?}", &s[start..end])))?;
        if i == 0 || i > n {
            return Err(Error::Index(format!("generator x{i} outside 1..={n}")));
        }
        word.push(i);
        pos = end;
        if b.get(pos) == Some(&b'*') && b.get(pos + 1) == Some(&b'x') {
            pos += 1;
        }
    }
    if has_star && word.is_empty() {
        return Err(Error::Parse("expected a generator after '*'".into()));
    }
    let mono = GrassmannElement::word(n, &word)?;
    Ok((mono.scale(&coeff), pos))
}

/// Coefficient prefix for a term; `neg` reports a leading minus to hoist into the joiner.
pub(super) fn coefficient_text(c: &Scalar, has_generators: bool) -> (bool, String) {
    if !c.is_real() && !c.re().is_zero() {
        let star = if has_generators { "*" } else { "" };
        return (false, format!("({c}){star}"));
    }
    let text = c.to_string();
    let (neg, mag) = match text.strip_prefix('-') {
        Some(rest) => (true, rest.to_string()),
        None => (false, text),
    };
    let body = match (has_generators, mag.as_str()) {
        (true, "1") => String::new(),
        (true, _) => format!("{mag}*"),
        (false, _) => mag,
    };
    (neg, body)
}

impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in terms.iter().enumerate() {
            let gens: String = indices(*m).iter().map(|i| format!("x{i}")).collect();
            let (neg, coeff) = coefficient_text(c, *m != 0);
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write!(f, "{coeff}{gens}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Λ({}): {self}", self.n())
    }
}
