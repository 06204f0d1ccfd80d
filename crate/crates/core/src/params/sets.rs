use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::ParamError;

/// A set of naturals given by finitely many members plus an optional
/// periodic tail: from `threshold` on, `n` is a member iff
/// `threshold + (n - threshold) mod period` is an explicit member.
///
/// Text form: `{1,3}` or `{1,2}+2@2` (period 2 from threshold 2).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UltimatelyPeriodicSet {
    explicit: BTreeSet<u64>,
    threshold: u64,
    period: u64,
}

impl UltimatelyPeriodicSet {
    pub fn finite<I: IntoIterator<Item = u64>>(members: I) -> Self {
        UltimatelyPeriodicSet { explicit: members.into_iter().collect(), threshold: 0, period: 0 }
    }

    pub fn periodic<I: IntoIterator<Item = u64>>(members: I, period: u64, threshold: u64) -> Self {
        UltimatelyPeriodicSet { explicit: members.into_iter().collect(), threshold, period }
    }

    /// Every natural number.
    pub fn all() -> Self {
        Self::periodic([0], 1, 0)
    }

    pub fn explicit(&self) -> &BTreeSet<u64> {
        &self.explicit
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn contains(&self, n: u64) -> bool {
        if self.explicit.contains(&n) {
            return true;
        }
        self.period > 0 && n >= self.threshold && self.explicit.contains(&(self.threshold + (n - self.threshold) % self.period))
    }
}

impl fmt::Display for UltimatelyPeriodicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.explicit.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", items.join(","))?;
        if self.period > 0 {
            write!(f, "+{}@{}", self.period, self.threshold)?;
        }
        Ok(())
    }
}

impl FromStr for UltimatelyPeriodicSet {
    type Err = ParamError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParamError::SetSyntax(s.to_string());
        let t = s.trim();
        let body = t.strip_prefix('{').ok_or_else(bad)?;
        let (inner, tail) = body.split_once('}').ok_or_else(bad)?;
        let mut explicit = BTreeSet::new();
        for item in inner.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            explicit.insert(item.parse().map_err(|_| bad())?);
        }
        let tail = tail.trim();
        if tail.is_empty() {
            return Ok(UltimatelyPeriodicSet { explicit, threshold: 0, period: 0 });
        }
        let (p, th) = tail.strip_prefix('+').and_then(|r| r.split_once('@')).ok_or_else(bad)?;
        let period = p.trim().parse().map_err(|_| bad())?;
        let threshold = th.trim().parse().map_err(|_| bad())?;
        Ok(UltimatelyPeriodicSet { explicit, threshold, period })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership() {
        let evens = UltimatelyPeriodicSet::periodic([1, 2], 2, 2);
        let members: Vec<u64> = (0..10).filter(|&n| evens.contains(n)).collect();
        assert_eq!(members, vec![1, 2, 4, 6, 8]);
        assert!(UltimatelyPeriodicSet::all().contains(17));
        let f = UltimatelyPeriodicSet::finite([1, 3]);
        assert!(f.contains(3) && !f.contains(5));
    }

    #[test]
    fn text_roundtrip() {
        for text in ["{1}", "{1,3}", "{}", "{1,2}+2@2", "{0}+1@0"] {
            let s: UltimatelyPeriodicSet = text.parse().unwrap();
            assert_eq!(s.to_string(), text);
        }
        assert_eq!("{ 3, 1 }".parse::<UltimatelyPeriodicSet>().unwrap(), UltimatelyPeriodicSet::finite([1, 3]));
        for bad in ["1,2", "{a}", "{1}+2", "{1}x", "{1}+p@2"] {
            assert!(bad.parse::<UltimatelyPeriodicSet>().is_err(), "{bad}");
        }
    }
}
