use std::collections::BTreeMap;
use std::fmt::Write;

use super::ParamError;
use crate::semiring::{parse_rational, Q};

/// Target graph `H` for the tropical partition function: vertex weights
/// `α` (default 0) and symmetric edge weights `β`; loops are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedTargetGraph {
    alpha: Vec<Q>,
    beta: BTreeMap<(usize, usize), Q>,
}

impl WeightedTargetGraph {
    pub fn new(n: usize) -> Self {
        WeightedTargetGraph { alpha: vec![Q::from_integer(0); n], beta: BTreeMap::new() }
    }

    /// One vertex carrying a loop.
    pub fn single_loop(alpha: Q, beta: Q) -> Self {
        let mut h = Self::new(1);
        h.alpha[0] = alpha;
        h.beta.insert((0, 0), beta);
        h
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self, a: usize) -> Q {
        self.alpha[a]
    }

    /// `β(a,b)`, or `None` when `ab` is not an edge of `H`.
    pub fn beta(&self, a: usize, b: usize) -> Option<Q> {
        self.beta.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), Q)> + '_ {
        self.beta.iter().map(|(&e, &q)| (e, q))
    }

    /// The weights scaled to integers by their common denominator, with a
    /// dense edge table.
    pub fn scaled(&self) -> Result<ScaledWeights, ParamError> {
        let too_large = |value: i64| ParamError::Guard { what: "weight denominator", value: value.unsigned_abs(), limit: i64::MAX as u64 };
        let mut scale: i64 = 1;
        for q in self.alpha.iter().chain(self.beta.values()) {
            let d = *q.denom();
            scale = scale.checked_mul(d / gcd(scale, d)).ok_or_else(|| too_large(d))?;
        }
        let lift = |q: &Q| i128::from(*q.numer()) * i128::from(scale / q.denom());
        let n = self.n();
        let mut beta = vec![None; n * n];
        for (&(a, b), q) in &self.beta {
            beta[a * n + b] = Some(lift(q));
            beta[b * n + a] = Some(lift(q));
        }
        Ok(ScaledWeights { n, scale, alpha: self.alpha.iter().map(lift).collect(), beta })
    }

    fn check(&self, v: usize) -> Result<(), String> {
        if v < self.n() {
            Ok(())
        } else {
            Err(format!("vertex {v} out of range (h = {})", self.n()))
        }
    }

    pub fn set_alpha(&mut self, a: usize, w: Q) -> Result<(), ParamError> {
        self.check(a).map_err(|msg| ParamError::Format { line: 0, msg })?;
        self.alpha[a] = w;
        Ok(())
    }

    pub fn add_edge(&mut self, a: usize, b: usize, w: Q) -> Result<(), ParamError> {
        self.check(a).and_then(|_| self.check(b)).map_err(|msg| ParamError::Format { line: 0, msg })?;
        self.beta.insert((a.min(b), a.max(b)), w);
        Ok(())
    }
}

/// Integer weights equal to `scale` times the rational ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledWeights {
    pub n: usize,
    pub scale: i64,
    pub alpha: Vec<i128>,
    /// `β(a,b)` at `a * n + b`, both orders.
    pub beta: Vec<Option<i128>>,
}

impl ScaledWeights {
    pub fn beta(&self, a: usize, b: usize) -> Option<i128> {
        self.beta[a * self.n + b]
    }

    /// Converts a scaled total back to a rational.
    pub fn unscale(&self, total: i128) -> Result<Q, ParamError> {
        let numer = i64::try_from(total)
            .map_err(|_| ParamError::Guard { what: "partition function magnitude", value: u64::MAX, limit: i64::MAX as u64 })?;
        Ok(Q::new(numer, self.scale))
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Reads `h <n>`, then `a <v> <q>` and `b <u> <v> <q>` lines (0-based
/// vertices, `u = v` for loops). `#` starts a comment.
pub fn read_target(text: &str) -> Result<WeightedTargetGraph, ParamError> {
    let mut h: Option<WeightedTargetGraph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |msg: String| ParamError::Format { line, msg };
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        let num = |i: usize| -> Result<usize, ParamError> {
            toks.get(i).and_then(|t| t.parse().ok()).ok_or_else(|| err(format!("bad vertex in `{body}`")))
        };
        let weight = |i: usize| -> Result<Q, ParamError> {
            toks.get(i).and_then(|t| parse_rational(t)).ok_or_else(|| err(format!("bad weight in `{body}`")))
        };
        let arity = match toks[0] {
            "h" => 2,
            "a" => 3,
            "b" => 4,
            t => return Err(err(format!("unknown line tag `{t}`"))),
        };
        if toks.len() != arity {
            return Err(err(format!("expected {arity} fields, found {}", toks.len())));
        }
        match (toks[0], h.as_mut()) {
            ("h", None) => h = Some(WeightedTargetGraph::new(num(1)?)),
            ("h", Some(_)) => return Err(err("duplicate header".into())),
            (_, None) => return Err(err("expected `h <n>` header".into())),
            ("a", Some(h)) => {
                let v = num(1)?;
                h.check(v).map_err(err)?;
                h.alpha[v] = weight(2)?;
            }
            (_, Some(h)) => {
                let (u, v) = (num(1)?, num(2)?);
                h.check(u).and_then(|_| h.check(v)).map_err(err)?;
                h.beta.insert((u.min(v), u.max(v)), weight(3)?);
            }
        }
    }
    h.ok_or(ParamError::Format { line: 0, msg: "empty target graph".into() })
}

pub fn write_target(h: &WeightedTargetGraph) -> String {
    let mut out = format!("h {}\n", h.n());
    for (v, a) in h.alpha.iter().enumerate() {
        let _ = writeln!(out, "a {v} {a}");
    }
    for (&(u, v), b) in &h.beta {
        let _ = writeln!(out, "b {u} {v} {b}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_errors() {
        let text = "# looped vertex\nh 1\na 0 2\nb 0 0 -1\n";
        let h = read_target(text).unwrap();
        assert_eq!(h, WeightedTargetGraph::single_loop(Q::from_integer(2), Q::from_integer(-1)));
        assert_eq!(read_target(&write_target(&h)).unwrap(), h);
        let mut k2 = WeightedTargetGraph::new(2);
        k2.add_edge(1, 0, Q::new(3, 2)).unwrap();
        assert_eq!(k2.beta(0, 1), Some(Q::new(3, 2)));
        assert_eq!(read_target(&write_target(&k2)).unwrap(), k2);
        for bad in ["a 0 1", "h 1\nb 0 1 0", "h 1\na 0 x", "h 1\nh 1", "h 1\nz 0", ""] {
            assert!(read_target(bad).is_err(), "{bad:?}");
        }
        let e = read_target("h 2\n\nb 0 5 1").unwrap_err();
        assert!(matches!(e, ParamError::Format { line: 3, .. }));
    }
}
