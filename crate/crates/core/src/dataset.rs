//! The data set record `(n, g0, (a,b); (c1,n1), ..., (cm,nm))`.
//!
//! A data set of degree `n` and genus `g` describes one conjugacy class of
//! degree-`n` roots of the twist about a nonseparating curve on the surface
//! of genus `g + 1`. It must satisfy:
//!
//! * **I**: `n > 1`, `g0 >= 0`, each `n_i > 1` and `n_i | n`;
//! * **II**: `a`, `b` are units mod `n` and each `c_i` is a unit mod `n_i`;
//! * **III**: `a + b = a*b (mod n)`;
//! * **IV**: `a + b + sum (n/n_i) c_i = 0 (mod n)`.
//!
//! Residues are stored reduced and the cone list is kept sorted by
//! `(n_i, c_i)`, so the only freedom left is the `a <-> b` swap that
//! [`DataSet::canonicalize`] removes.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numtheory::{gcd_u64, mul_mod, reduce, MAX_VALUE};

/// Upper bound on the number of cone points accepted by the constructors.
pub const MAX_CONES: usize = 1_000_000;

/// A cone point `(c, order)` of the quotient orbifold: `c` is a residue
/// modulo `order`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    pub order: u64,
    pub residue: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DataSet {
    n: u64,
    g0: u64,
    a: u64,
    b: u64,
    cones: Vec<Cone>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    I,
    II,
    III,
    IV,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::I => "I",
            Condition::II => "II",
            Condition::III => "III",
            Condition::IV => "IV",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// Distinct violated conditions, in order I..IV.
    pub fn conditions(&self) -> Vec<Condition> {
        let mut out: Vec<_> = self.violations.iter().map(|v| v.condition).collect();
        out.dedup();
        out
    }
}

impl DataSet {
    /// Builds a data set from raw integers, reducing every residue and
    /// sorting the cones. No validity check beyond the value ranges.
    pub fn new(n: u64, g0: u64, (a, b): (i64, i64), cones: &[(i64, u64)]) -> Result<Self> {
        if !(2..=MAX_VALUE).contains(&n) {
            return Err(Error::RangeExceeded(format!(
                "degree must lie in [2, {MAX_VALUE}], got {n}"
            )));
        }
        if g0.checked_mul(n).is_none_or(|v| v > MAX_VALUE) {
            return Err(Error::RangeExceeded(format!(
                "g0 * n must not exceed {MAX_VALUE}"
            )));
        }
        if cones.len() > MAX_CONES {
            return Err(Error::RangeExceeded(format!(
                "at most {MAX_CONES} cone points are supported"
            )));
        }
        let mut reduced = Vec::with_capacity(cones.len());
        for &(c, order) in cones {
            if !(2..=MAX_VALUE).contains(&order) {
                return Err(Error::RangeExceeded(format!(
                    "cone order must lie in [2, {MAX_VALUE}], got {order}"
                )));
            }
            reduced.push(Cone {
                order,
                residue: reduce(c, order),
            });
        }
        Ok(Self::from_parts(n, g0, reduce(a, n), reduce(b, n), reduced))
    }

    /// Internal constructor for values already reduced.
    pub(crate) fn from_parts(n: u64, g0: u64, a: u64, b: u64, mut cones: Vec<Cone>) -> Self {
        cones.sort_unstable();
        DataSet { n, g0, a, b, cones }
    }

    pub fn degree(&self) -> u64 {
        self.n
    }

    pub fn g0(&self) -> u64 {
        self.g0
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    /// Checks conditions I-IV, reporting every violation.
    ///
    /// Condition IV is only evaluated when every cone order divides `n`.
    pub fn validate(&self) -> ValidationReport {
        self.check(1)
    }

    /// Shared checker: condition III becomes `a + b = power * a * b`.
    pub(crate) fn check(&self, power: u64) -> ValidationReport {
        let n = self.n;
        let mut violations = Vec::new();
        let mut push = |condition, detail: String| violations.push(Violation { condition, detail });

        let mut orders_divide = true;
        for cone in &self.cones {
            if !n.is_multiple_of(cone.order) {
                orders_divide = false;
                push(
                    Condition::I,
                    format!("cone order {} does not divide {n}", cone.order),
                );
            }
        }

        if gcd_u64(self.a, n) != 1 {
            push(
                Condition::II,
                format!("a = {} is not a unit mod {n}", self.a),
            );
        }
        if gcd_u64(self.b, n) != 1 {
            push(
                Condition::II,
                format!("b = {} is not a unit mod {n}", self.b),
            );
        }
        for cone in &self.cones {
            if gcd_u64(cone.residue, cone.order) != 1 {
                push(
                    Condition::II,
                    format!("c = {} is not a unit mod {}", cone.residue, cone.order),
                );
            }
        }

        let sum = (self.a + self.b) % n;
        let product = mul_mod(mul_mod(self.a, self.b, n), power % n, n);
        if sum != product {
            let lhs = if power == 1 {
                "a*b".to_string()
            } else {
                format!("{power}*a*b")
            };
            push(
                Condition::III,
                format!("a + b = {sum} but {lhs} = {product} (mod {n})"),
            );
        }

        if orders_divide {
            let total = self.cone_sum(sum);
            if total != 0 {
                push(
                    Condition::IV,
                    format!("a + b + sum (n/n_i) c_i = {total} (mod {n}), expected 0"),
                );
            }
        }

        ValidationReport { violations }
    }

    /// `start + sum (n/n_i) c_i mod n`; requires every order to divide `n`.
    fn cone_sum(&self, start: u64) -> u64 {
        let n = self.n;
        self.cones.iter().fold(start % n, |acc, cone| {
            (acc + mul_mod(n / cone.order, cone.residue, n)) % n
        })
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// `2 g0 n + sum (n/n_i)(n_i - 1)`, twice the genus.
    pub fn doubled_genus(&self) -> u64 {
        let cones: u64 = self
            .cones
            .iter()
            .map(|c| (self.n / c.order) * (c.order - 1))
            .sum();
        2 * self.g0 * self.n + cones
    }

    /// `g = g0 n + (1/2) sum (n/n_i)(n_i - 1)`.
    ///
    /// # Panics
    ///
    /// If the cone sum is odd, which cannot happen for a valid data set.
    pub fn genus(&self) -> u64 {
        let doubled = self.doubled_genus();
        assert!(
            doubled.is_multiple_of(2),
            "genus of {self} is not an integer; data set is not valid"
        );
        doubled / 2
    }

    /// Canonical representative: `a <= b`, reduced residues, sorted cones.
    pub fn canonicalize(&self) -> DataSet {
        let mut out = self.clone();
        if out.a > out.b {
            std::mem::swap(&mut out.a, &mut out.b);
        }
        out
    }

    pub fn is_canonical(&self) -> bool {
        self.a <= self.b
    }

    /// True when both describe the same class: equal up to swapping `a` and
    /// `b`, reducing residues and reordering cones.
    pub fn equivalent(&self, other: &DataSet) -> bool {
        self.canonicalize() == other.canonicalize()
    }

    /// The same data set with `g0` incremented; its genus grows by `n`.
    pub fn stabilize(&self) -> DataSet {
        DataSet {
            g0: self.g0 + 1,
            ..self.clone()
        }
    }

    /// True when every cone has order `n`.
    pub fn is_primary(&self) -> bool {
        self.cones.iter().all(|c| c.order == self.n)
    }
}

impl fmt::Display for DataSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, ({},{}); ", self.n, self.g0, self.a, self.b)?;
        for (i, cone) in self.cones.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({},{})", cone.residue, cone.order)?;
        }
        f.write_str(")")
    }
}

impl FromStr for DataSet {
    type Err = Error;

    /// Parses `(n, g0, (a,b); (c1,n1), ...)` with arbitrary whitespace,
    /// including the spaced-out form `( 21, 0, ( 2, 2 );( 17, 21 ))`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser {
            text: &compact,
            pos: 0,
        };
        p.expect('(')?;
        let n = p.unsigned()?;
        p.expect(',')?;
        let g0 = p.unsigned()?;
        p.expect(',')?;
        p.expect('(')?;
        let a = p.signed()?;
        p.expect(',')?;
        let b = p.signed()?;
        p.expect(')')?;
        p.expect(';')?;
        let mut cones = Vec::new();
        while p.peek() == Some('(') {
            p.expect('(')?;
            let c = p.signed()?;
            p.expect(',')?;
            let order = p.unsigned()?;
            p.expect(')')?;
            cones.push((c, order));
            if p.peek() == Some(',') {
                p.expect(',')?;
                if p.peek() != Some('(') {
                    return Err(p.error("expected '(' after ','"));
                }
            }
        }
        p.expect(')')?;
        if p.pos != p.text.len() {
            return Err(p.error("trailing input"));
        }
        DataSet::new(n, g0, (a, b), &cones)
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.text))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(&format!("expected {c:?}")))
        }
    }

    fn digits(&mut self) -> Result<&str> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        Ok(&self.text[start..self.pos])
    }

    fn unsigned(&mut self) -> Result<u64> {
        let digits = self.digits()?;
        digits
            .parse()
            .map_err(|_| Error::RangeExceeded(format!("integer {digits}")))
    }

    fn signed(&mut self) -> Result<i64> {
        let negative = self.peek() == Some('-');
        if negative {
            self.pos += 1;
        }
        let digits = self.digits()?;
        let value: i64 = digits
            .parse()
            .map_err(|_| Error::RangeExceeded(format!("integer {digits}")))?;
        Ok(if negative { -value } else { value })
    }
}

/// A data set for a root of a power `t^power` of the twist: condition III
/// is replaced by `a + b = power * a * b (mod n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FractionalDataSet {
    pub dataset: DataSet,
    pub power: u64,
}

impl FractionalDataSet {
    /// Set when `gcd(power, n) > 1`: such a candidate may be a power of a
    /// lower-degree root of a smaller power.
    pub fn may_be_ineffective(&self) -> bool {
        gcd_u64(self.power, self.dataset.degree()) > 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(s: &str) -> DataSet {
        s.parse().unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(ds("(21, 0, (2,2); (17,21))").is_valid());
        assert!(ds("(9, 0, (2,2); (2,9),(1,3))").is_valid());
        let report = ds("(4, 0, (1,1); (1,2))").validate();
        assert_eq!(report.conditions(), vec![Condition::III]);
    }

    #[test]
    fn validate_reports_every_violation() {
        // 9 does not divide 15, 3 is not a unit mod 15 and the twist pair fails III.
        let report = DataSet::new(15, 0, (3, 2), &[(1, 9), (0, 5)])
            .unwrap()
            .validate();
        assert_eq!(
            report.conditions(),
            vec![Condition::I, Condition::II, Condition::III]
        );
        let report = ds("(7, 0, (2,2); (1,7))").validate();
        assert_eq!(report.conditions(), vec![Condition::IV]);
    }

    #[test]
    fn constructor_ranges() {
        assert!(DataSet::new(1, 0, (1, 1), &[]).is_err());
        assert!(DataSet::new(5, 0, (1, 1), &[(1, 1)]).is_err());
        assert!(DataSet::new(MAX_VALUE + 1, 0, (1, 1), &[]).is_err());
        assert!(DataSet::new(1_000_000, 10_000_000, (1, 1), &[]).is_err());
    }

    #[test]
    fn genus_examples() {
        assert_eq!(ds("(9, 0, (2,2); (2,9),(1,3))").genus(), 7);
        assert_eq!(ds("(3, 0, (2,2); (2,3))").genus(), 1);
        assert_eq!(ds("(21, 0, (2,2); (17,21))").genus(), 10);
    }

    #[test]
    fn canonicalize_examples() {
        let raw = DataSet::new(21, 0, (2, 2), &[(-4, 21)]).unwrap();
        assert_eq!(raw.canonicalize(), ds("(21, 0, (2,2); (17,21))"));
        let swapped = DataSet::new(5, 0, (4, 3), &[(3, 5)]).unwrap();
        assert_eq!(swapped.canonicalize().to_string(), "(5, 0, (3,4); (3,5))");
        let already = ds("(9, 0, (2,2); (1,3),(2,9))");
        assert_eq!(already.canonicalize(), already);
        assert_eq!(already.canonicalize().canonicalize(), already);
    }

    #[test]
    fn equivalence_examples() {
        let raw = DataSet::new(21, 0, (2, 2), &[(-4, 21)]).unwrap();
        assert!(raw.equivalent(&ds("(21, 0, (2,2); (17,21))")));
        assert!(ds("(5, 0, (3,4); (3,5))").equivalent(&ds("(5, 0, (4,3); (3,5))")));
        assert!(!ds("(21, 0, (2,2); (17,21))").equivalent(&ds("(21, 0, (5,17); (20,21))")));
    }

    #[test]
    fn stabilize_examples() {
        let s = ds("(3, 0, (2,2); (2,3))").stabilize();
        assert_eq!(s, ds("(3, 1, (2,2); (2,3))"));
        assert_eq!(s.genus(), 4);
        assert_eq!(ds("(5, 0, (2,2); (1,5))").stabilize().genus(), 7);
        let s = ds("(9, 1, (2,2); (2,9),(1,3))").stabilize();
        assert_eq!(s.g0(), 2);
        assert_eq!(s.genus(), 25);
    }

    #[test]
    fn text_format() {
        let d = ds("(3,0,(2,2);(2,3),(1,3),(2,3))");
        assert_eq!(d.to_string(), "(3, 0, (2,2); (1,3),(2,3),(2,3))");
        let gap = ds("( 21, 0, ( 2, 2 );( 17, 21 ))");
        assert_eq!(gap.to_string(), "(21, 0, (2,2); (17,21))");
        assert_eq!(
            ds("(5, 0, (2,2); (-4,5))").to_string(),
            "(5, 0, (2,2); (1,5))"
        );
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "",
            "(21, 0, (2,2) (17,21))",
            "(21, 0, (2,2); (17,21)",
            "(21, 0, (2,2); (17,21),)",
            "(21, 0, (2,2); (17,21)) x",
            "(21, -1, (2,2); (17,21))",
            "(21, 0, (2,2); (17,x))",
        ] {
            assert!(bad.parse::<DataSet>().is_err(), "{bad:?} should not parse");
        }
        assert!(matches!(
            "(99999999999999999999, 0, (2,2); (1,3))".parse::<DataSet>(),
            Err(Error::RangeExceeded(_))
        ));
    }

    #[test]
    fn even_degree_always_fails_iii() {
        for n in (2..=50u64).step_by(2) {
            for a in 0..n {
                for b in 0..n {
                    let d = DataSet::from_parts(n, 0, a, b, vec![]);
                    assert!(
                        d.validate().conditions().contains(&Condition::III)
                            || gcd_u64(a, n) != 1
                            || gcd_u64(b, n) != 1
                    );
                }
            }
        }
    }
}
