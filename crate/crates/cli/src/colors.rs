//! Color budgets given relative to `n`: `40`, `n`, `n-1`, `2n`, `3n/2`,
//! `n+5`.

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColorExpr {
    mul: i64,
    div: i64,
    add: i64,
}

impl ColorExpr {
    /// `floor(mul·n/div) + add`, or `None` if that is below 1.
    pub fn eval(&self, n: usize) -> Option<usize> {
        let v = self.mul * n as i64 / self.div + self.add;
        usize::try_from(v).ok().filter(|&v| v >= 1)
    }
}

impl fmt::Display for ColorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.mul, self.div) {
            (0, _) => return write!(f, "{}", self.add),
            (1, 1) => write!(f, "n")?,
            (m, 1) => write!(f, "{m}n")?,
            (m, d) => write!(f, "{m}n/{d}")?,
        }
        match self.add {
            0 => Ok(()),
            a if a > 0 => write!(f, "+{a}"),
            a => write!(f, "{a}"),
        }
    }
}

impl FromStr for ColorExpr {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || format!("cannot parse color budget {s:?} (try 40, n-1, 2n, 3n/2)");
        let Some(at) = s.find('n') else {
            let add = s.parse().map_err(|_| bad())?;
            return Ok(ColorExpr {
                mul: 0,
                div: 1,
                add,
            });
        };
        let mul = match &s[..at] {
            "" => 1,
            m => m.parse().map_err(|_| bad())?,
        };
        let rest = &s[at + 1..];
        let split = rest.find(['+', '-']).unwrap_or(rest.len());
        let div = match &rest[..split] {
            "" => 1,
            d => d
                .strip_prefix('/')
                .ok_or_else(bad)?
                .parse()
                .map_err(|_| bad())?,
        };
        let add = match &rest[split..] {
            "" => 0,
            a => a
                .strip_prefix('+')
                .unwrap_or(a)
                .parse()
                .map_err(|_| bad())?,
        };
        if mul < 0 || div <= 0 {
            return Err(bad());
        }
        Ok(ColorExpr { mul, div, add })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        let eval = |s: &str, n| s.parse::<ColorExpr>().unwrap().eval(n);
        assert_eq!(eval("40", 10), Some(40));
        assert_eq!(eval("n", 10), Some(10));
        assert_eq!(eval("n-1", 10), Some(9));
        assert_eq!(eval("2n", 10), Some(20));
        assert_eq!(eval("3n/2", 11), Some(16));
        assert_eq!(eval("n + 5", 10), Some(15));
        assert_eq!(eval("n-20", 10), None);
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "x", "n*2", "2n/0", "n/", "-n", "n--1"] {
            assert!(s.parse::<ColorExpr>().is_err(), "{s}");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["n-1", "2n", "3n/2+4", "17", "n"] {
            let e: ColorExpr = s.parse().unwrap();
            assert_eq!(e.to_string(), s);
            assert_eq!(e.to_string().parse::<ColorExpr>().unwrap(), e);
        }
    }
}
