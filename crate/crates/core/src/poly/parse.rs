//! Text grammar for polynomials: `2*x*y^2 + 1`, `x^3+y^3+z^3`, `z^2 - x^2*y`.
//!
//! Terms are joined by `+` or `-`; a term is a `*`-joined product of integer
//! coefficients, variables with optional `^exponent`, and parenthesised
//! subexpressions. An identifier that is not a variable but splits uniquely
//! into variable names is read as their product, so `st` means `s*t`.

use std::sync::Arc;

use super::polynomial::Polynomial;
use super::ring::PolyRing;
use crate::error::{Error, Result};

struct Parser<'a> {
    ring: &'a Arc<PolyRing>,
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.pos + 1, msg)
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.ring);
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                negate = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => {
                    negate = false;
                    self.pos += 1;
                }
                Some(b'-') => {
                    negate = true;
                    self.pos += 1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|_| Error::parse(start + 1, "number too large"))
    }

    fn exponent(&mut self) -> Result<Option<u64>> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            Ok(Some(self.number()?))
        } else {
            Ok(None)
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                let c = Polynomial::constant(self.ring, (n % self.ring.characteristic() as u64) as i64);
                match self.exponent()? {
                    Some(e) => c.pow(e),
                    None => Ok(c),
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                match self.exponent()? {
                    Some(e) => inner.pow(e),
                    None => Ok(inner),
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let vars = split_identifier(self.ring, name)
                    .ok_or_else(|| Error::parse(start + 1, format!("unknown variable '{name}'")))?;
                let exp = self.exponent()?;
                let mut acc = Polynomial::one(self.ring);
                for (k, &v) in vars.iter().enumerate() {
                    let mut f = Polynomial::var(self.ring, v);
                    if k + 1 == vars.len() {
                        if let Some(e) = exp {
                            f = f.pow(e)?;
                        }
                    }
                    acc = &acc * &f;
                }
                Ok(acc)
            }
            Some(c) => Err(self.err(format!("unexpected character '{}'", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Variable indices whose names concatenate to `name`, when that reading is
/// unique.
fn split_identifier(ring: &PolyRing, name: &str) -> Option<Vec<usize>> {
    if let Some(i) = ring.var_index(name) {
        return Some(vec![i]);
    }
    // count decompositions by dynamic programming, remember one
    let n = name.len();
    let mut ways = vec![0u32; n + 1];
    let mut back: Vec<Option<(usize, usize)>> = vec![None; n + 1];
    ways[0] = 1;
    for end in 1..=n {
        for (vi, v) in ring.var_names().iter().enumerate() {
            if v.len() <= end && &name[end - v.len()..end] == v && ways[end - v.len()] > 0 {
                ways[end] = ways[end].saturating_add(ways[end - v.len()]);
                back[end] = Some((end - v.len(), vi));
            }
        }
    }
    if ways[n] != 1 {
        return None;
    }
    let mut out = Vec::new();
    let mut at = n;
    while at > 0 {
        let (prev, vi) = back[at]?;
        out.push(vi);
        at = prev;
    }
    out.reverse();
    Some(out)
}

/// Parses one polynomial; columns in errors are 1-based.
pub fn parse_polynomial(ring: &Arc<PolyRing>, text: &str) -> Result<Polynomial> {
    let mut p = Parser {
        ring,
        src: text.as_bytes(),
        pos: 0,
    };
    if p.peek().is_none() {
        return Err(p.err("empty polynomial"));
    }
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

/// Parses a comma-separated list of polynomials (top-level commas only).
pub fn parse_polynomial_list(ring: &Arc<PolyRing>, text: &str) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = text.as_bytes();
    for i in 0..=bytes.len() {
        let at_end = i == bytes.len();
        if !at_end {
            match bytes[i] {
                b'(' => depth += 1,
                b')' => depth -= 1,
                _ => {}
            }
        }
        if at_end || (bytes[i] == b',' && depth == 0) {
            let piece = &text[start..i];
            if piece.trim().is_empty() {
                if at_end && out.is_empty() && start == 0 {
                    return Ok(out);
                }
                return Err(Error::parse(start + 1, "empty list entry"));
            }
            let p = parse_polynomial(ring, piece).map_err(|e| e.at_line(1, start))?;
            out.push(p);
            start = i + 1;
        }
    }
    Ok(out)
}
