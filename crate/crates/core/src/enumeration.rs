//! Duplicate-free enumeration of canonical data sets.
//!
//! Classes of degree `n` and genus `g` are generated branch by branch: a
//! quotient genus `g0` with `g0 * n <= g`, a multiset of cone orders whose
//! weights make up the rest of the genus, a twist pair `(a, b)`, and finally
//! the cone residues. Residues are generated nondecreasing inside each block
//! of equal orders, so every class appears exactly once, already canonical.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::dataset::{Cone, DataSet};
use crate::error::{Error, Result};
use crate::numtheory::{divisors, gcd_u64, mod_inverse, mul_mod, MAX_VALUE};

/// Default abort threshold for a single enumeration query.
pub const DEFAULT_CLASS_CAP: u64 = 10_000_000;

/// Bounds enforced by [`oracle_datasets`].
pub const ORACLE_MAX_DEGREE: u64 = 15;
pub const ORACLE_MAX_GENUS: u64 = 12;

/// A multiset of cone orders (divisors of `n` greater than one), sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConeMultiset {
    n: u64,
    orders: Vec<u64>,
}

impl ConeMultiset {
    pub fn degree(&self) -> u64 {
        self.n
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Total contribution to the genus, `sum (n/n_i)(n_i - 1)/2`.
    pub fn weight(&self) -> u64 {
        self.orders.iter().map(|&d| cone_weight(self.n, d)).sum()
    }
}

/// Genus contribution `(n/d)(d - 1)/2` of one cone of order `d`; `n` odd.
pub fn cone_weight(n: u64, d: u64) -> u64 {
    (n / d) * (d - 1) / 2
}

fn odd_degree(n: u64) -> bool {
    n >= 3 && n % 2 == 1 && n <= MAX_VALUE
}

/// All multisets of divisors `> 1` of the odd degree `n` with total weight
/// exactly `r`. `r = 0` gives the single empty multiset.
pub fn cone_multisets(n: u64, r: u64) -> Vec<ConeMultiset> {
    let mut out = Vec::new();
    if !odd_degree(n) {
        return out;
    }
    let _ = visit_cone_multisets::<()>(n, r, &mut |orders| {
        out.push(ConeMultiset {
            n,
            orders: orders.to_vec(),
        });
        ControlFlow::Continue(())
    });
    out.sort();
    out
}

fn visit_cone_multisets<B>(
    n: u64,
    r: u64,
    visit: &mut dyn FnMut(&[u64]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let orders: Vec<(u64, u64)> = divisors(n)
        .expect("degree within factorization range")
        .into_iter()
        .filter(|&d| d > 1)
        .map(|d| (d, cone_weight(n, d)))
        .collect();
    let mut current = Vec::new();
    multiset_step(&orders, 0, r, &mut current, visit)
}

fn multiset_step<B>(
    orders: &[(u64, u64)],
    start: usize,
    remaining: u64,
    current: &mut Vec<u64>,
    visit: &mut dyn FnMut(&[u64]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    if remaining == 0 {
        return visit(current);
    }
    for (i, &(d, w)) in orders.iter().enumerate().skip(start) {
        if w > remaining {
            continue;
        }
        current.push(d);
        multiset_step(orders, i, remaining - w, current, visit)?;
        current.pop();
    }
    ControlFlow::Continue(())
}

/// Unordered pairs of units `(a, b)`, `a <= b`, with `a + b = a*b (mod n)`.
///
/// Generated from the `x` for which `x` and `1 - x` are both units, via
/// `a = 1/x`, `b = 1/(1 - x)`.
pub fn twist_pairs(n: u64) -> Vec<(u64, u64)> {
    if !odd_degree(n) {
        return Vec::new();
    }
    let mut pairs: Vec<(u64, u64)> = (2..n)
        .filter(|&x| gcd_u64(x, n) == 1 && gcd_u64(n + 1 - x, n) == 1)
        .map(|x| {
            let a = mod_inverse(x as i64, n).expect("unit");
            let b = mod_inverse((n + 1 - x) as i64, n).expect("unit");
            (a.min(b), a.max(b))
        })
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

/// Pairs of units with `a + b = power * a * b (mod n)`, `a <= b`, found by
/// scanning all unit pairs. Works for any `n >= 2`.
pub(crate) fn scaled_twist_pairs(n: u64, power: u64) -> Vec<(u64, u64)> {
    let units: Vec<u64> = (1..n).filter(|&u| gcd_u64(u, n) == 1).collect();
    let p = power % n;
    let mut pairs = Vec::new();
    for (i, &a) in units.iter().enumerate() {
        for &b in &units[i..] {
            if (a + b) % n == mul_mod(mul_mod(a, b, n), p, n) {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

/// Search over cone residues for a fixed degree and ordered list of cone
/// orders (blocks of equal order adjacent).
pub(crate) struct ResidueSearch {
    n: u64,
    orders: Vec<u64>,
    steps: Vec<u64>,
    /// `gcd(n, steps[i..])`: the residues reachable from position `i` on.
    suffix_gcd: Vec<u64>,
    units: Vec<Vec<u64>>,
}

impl ResidueSearch {
    pub(crate) fn new(n: u64, orders: &[u64]) -> Self {
        let steps: Vec<u64> = orders.iter().map(|&d| n / d).collect();
        let mut suffix_gcd = vec![n; orders.len() + 1];
        for i in (0..orders.len()).rev() {
            suffix_gcd[i] = gcd_u64(suffix_gcd[i + 1], steps[i]);
        }
        let units = orders
            .iter()
            .map(|&d| (1..d).filter(|&c| gcd_u64(c, d) == 1).collect())
            .collect();
        ResidueSearch {
            n,
            orders: orders.to_vec(),
            steps,
            suffix_gcd,
            units,
        }
    }

    /// Visits every residue tuple, nondecreasing within equal-order blocks,
    /// with `start + sum steps[i] * c[i] = 0 (mod n)`.
    pub(crate) fn visit<B>(
        &self,
        start: u64,
        visit: &mut dyn FnMut(&[u64]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if self.orders.is_empty() {
            return if start.is_multiple_of(self.n) {
                visit(&[])
            } else {
                ControlFlow::Continue(())
            };
        }
        let mut current = Vec::with_capacity(self.orders.len());
        self.step(0, start % self.n, &mut current, visit)
    }

    fn step<B>(
        &self,
        i: usize,
        partial: u64,
        current: &mut Vec<u64>,
        visit: &mut dyn FnMut(&[u64]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let n = self.n;
        if !partial.is_multiple_of(self.suffix_gcd[i]) {
            return ControlFlow::Continue(());
        }
        let order = self.orders[i];
        let lower = match current.last() {
            Some(&prev) if self.orders[i - 1] == order => prev,
            _ => 0,
        };
        if i + 1 == self.orders.len() {
            // steps[i] * c = -partial (mod n)  <=>  c = -partial/steps[i] (mod order)
            let c = ((n - partial) % n) / self.steps[i] % order;
            if c >= lower && gcd_u64(c, order) == 1 {
                current.push(c);
                let flow = visit(current);
                current.pop();
                flow?;
            }
            return ControlFlow::Continue(());
        }
        let units = &self.units[i];
        let from = units.partition_point(|&u| u < lower);
        for &c in &units[from..] {
            current.push(c);
            let next = (partial + mul_mod(self.steps[i], c, n)) % n;
            self.step(i + 1, next, current, visit)?;
            current.pop();
        }
        ControlFlow::Continue(())
    }
}

/// Visits every canonical data set of genus `g` and degree `n`, unordered.
pub fn for_each_dataset<B>(
    g: u64,
    n: u64,
    visit: &mut dyn FnMut(DataSet) -> ControlFlow<B>,
) -> ControlFlow<B> {
    if g == 0 || !odd_degree(n) {
        return ControlFlow::Continue(());
    }
    let pairs = twist_pairs(n);
    for g0 in 0..=g / n {
        visit_cone_multisets(n, g - g0 * n, &mut |orders| {
            let search = ResidueSearch::new(n, orders);
            for &(a, b) in &pairs {
                search.visit(a + b, &mut |residues| {
                    let cones = orders
                        .iter()
                        .zip(residues)
                        .map(|(&order, &residue)| Cone { order, residue })
                        .collect();
                    visit(DataSet::from_parts(n, g0, a, b, cones))
                })?;
            }
            ControlFlow::Continue(())
        })?;
    }
    ControlFlow::Continue(())
}

/// An enumeration request: one degree, or every degree when `degree` is
/// `None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumQuery {
    pub genus: u64,
    pub degree: Option<u64>,
    pub class_cap: Option<u64>,
}

impl EnumQuery {
    pub fn new(genus: u64) -> Self {
        EnumQuery {
            genus,
            degree: None,
            class_cap: None,
        }
    }

    pub fn degree(mut self, n: u64) -> Self {
        self.degree = Some(n);
        self
    }

    pub fn class_cap(mut self, cap: u64) -> Self {
        self.class_cap = Some(cap);
        self
    }

    /// All classes, sorted by degree and then by canonical form.
    pub fn run(&self) -> Result<Vec<DataSet>> {
        let cap = self.class_cap.unwrap_or(DEFAULT_CLASS_CAP);
        if cap == 0 {
            return Err(Error::PreconditionViolated(
                "class cap must be positive".into(),
            ));
        }
        let degrees = match self.degree {
            Some(n) => vec![n],
            None => (3..=2 * self.genus + 1).step_by(2).collect(),
        };
        let mut out = Vec::new();
        for n in degrees {
            let start = out.len();
            let flow = for_each_dataset(self.genus, n, &mut |ds| {
                if out.len() as u64 >= cap {
                    return ControlFlow::Break(());
                }
                out.push(ds);
                ControlFlow::Continue(())
            });
            if flow.is_break() {
                return Err(Error::ClassCapExceeded { cap });
            }
            out[start..].sort_unstable();
        }
        Ok(out)
    }
}

/// All classes of degree-`n` roots of `t_{g+1}`, as sorted canonical data
/// sets. Uses [`DEFAULT_CLASS_CAP`].
pub fn datasets(g: u64, n: u64) -> Result<Vec<DataSet>> {
    EnumQuery::new(g).degree(n).run()
}

pub fn datasets_capped(g: u64, n: u64, cap: u64) -> Result<Vec<DataSet>> {
    EnumQuery::new(g).degree(n).class_cap(cap).run()
}

pub fn count_datasets(g: u64, n: u64) -> u64 {
    let mut count = 0u64;
    let _ = for_each_dataset::<()>(g, n, &mut |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    count
}

/// Brute-force reference enumeration: every `g0`, every ordered tuple of
/// cone orders, every raw residue tuple, filtered by validation.
pub fn oracle_datasets(g: u64, n: u64) -> Result<Vec<DataSet>> {
    if n > ORACLE_MAX_DEGREE || g > ORACLE_MAX_GENUS {
        return Err(Error::OracleRangeExceeded {
            max_degree: ORACLE_MAX_DEGREE,
            max_genus: ORACLE_MAX_GENUS,
        });
    }
    let mut found = BTreeSet::new();
    if n < 2 {
        return Ok(Vec::new());
    }
    let orders: Vec<u64> = divisors(n)?.into_iter().filter(|&d| d > 1).collect();
    for g0 in 0..=g / n {
        // Cone term of the doubled genus: sum (n/d)(d - 1).
        let target = 2 * (g - g0 * n);
        let mut tuples = Vec::new();
        ordered_tuples(n, &orders, target, &mut Vec::new(), &mut tuples);
        for tuple in tuples {
            let mut residues = vec![0i64; tuple.len()];
            for a in 0..n as i64 {
                for b in 0..n as i64 {
                    loop {
                        let cones: Vec<(i64, u64)> = residues
                            .iter()
                            .copied()
                            .zip(tuple.iter().copied())
                            .collect();
                        let ds = DataSet::new(n, g0, (a, b), &cones)?;
                        if ds.is_valid() && ds.genus() == g {
                            found.insert(ds.canonicalize());
                        }
                        if !odometer(&mut residues, &tuple) {
                            break;
                        }
                    }
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

fn ordered_tuples(
    n: u64,
    orders: &[u64],
    remaining: u64,
    current: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    for &d in orders {
        let w = (n / d) * (d - 1);
        if w <= remaining {
            current.push(d);
            ordered_tuples(n, orders, remaining - w, current, out);
            current.pop();
        }
    }
}

/// Advances `digits` as a mixed-radix counter; false once it wraps.
fn odometer(digits: &mut [i64], radices: &[u64]) -> bool {
    for (digit, &radix) in digits.iter_mut().zip(radices) {
        *digit += 1;
        if (*digit as u64) < radix {
            return true;
        }
        *digit = 0;
    }
    false
}

/// True iff `t_{g+1}` has a root of degree `n`.
///
/// Decided per cone multiset by computing the set of residues
/// `sum (n/n_i) c_i` reachable with unit `c_i`, without listing classes.
pub fn has_root(g: u64, n: u64) -> bool {
    if g == 0 || !odd_degree(n) {
        return false;
    }
    let needed: Vec<u64> = twist_pairs(n)
        .into_iter()
        .map(|(a, b)| (2 * n - a - b) % n)
        .collect();
    let unit_steps = |d: u64| -> Vec<u64> {
        (1..d)
            .filter(|&c| gcd_u64(c, d) == 1)
            .map(|c| c * (n / d) % n)
            .collect()
    };
    for g0 in 0..=g / n {
        let flow = visit_cone_multisets(n, g - g0 * n, &mut |orders| {
            if orders.is_empty() {
                return ControlFlow::Continue(());
            }
            let mut reachable = vec![false; n as usize];
            reachable[0] = true;
            let mut prev_order = 0;
            let mut steps = Vec::new();
            for &d in orders {
                if d != prev_order {
                    steps = unit_steps(d);
                    prev_order = d;
                }
                let mut next = vec![false; n as usize];
                for (r, _) in reachable.iter().enumerate().filter(|(_, &on)| on) {
                    for &s in &steps {
                        next[(r + s as usize) % n as usize] = true;
                    }
                }
                reachable = next;
            }
            if needed.iter().any(|&t| reachable[t as usize]) {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        if flow.is_break() {
            return true;
        }
    }
    false
}

/// The root set `R(g)`: degrees `n` for which `t_{g+1}` has a degree-`n`
/// root. Only odd `n` in `[3, 2g+1]` can occur.
pub fn root_degrees(g: u64) -> Vec<u64> {
    if g == 0 {
        return Vec::new();
    }
    (3..=2 * g + 1)
        .step_by(2)
        .filter(|&n| has_root(g, n))
        .collect()
}

/// The genus set of `n` truncated at `g_max`.
pub fn genus_set(n: u64, g_max: u64) -> Vec<u64> {
    (0..=g_max).filter(|&g| has_root(g, n)).collect()
}

/// Classes whose cones all have order `n`.
pub fn primary_datasets(g: u64, n: u64) -> Result<Vec<DataSet>> {
    let mut all = datasets(g, n)?;
    all.retain(DataSet::is_primary);
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(s: &str) -> DataSet {
        s.parse().unwrap()
    }

    fn orders(list: &[ConeMultiset]) -> Vec<Vec<u64>> {
        list.iter().map(|m| m.orders().to_vec()).collect()
    }

    #[test]
    fn cone_multiset_examples() {
        assert_eq!(orders(&cone_multisets(9, 7)), vec![vec![3, 9]]);
        assert_eq!(orders(&cone_multisets(3, 2)), vec![vec![3, 3]]);
        assert!(cone_multisets(5, 3).is_empty());
        assert_eq!(orders(&cone_multisets(7, 0)), vec![Vec::<u64>::new()]);
        assert!(cone_multisets(4, 2).is_empty());
        for m in cone_multisets(45, 40) {
            assert_eq!(m.weight(), 40);
        }
    }

    #[test]
    fn twist_pair_examples() {
        assert_eq!(twist_pairs(3), vec![(2, 2)]);
        assert_eq!(twist_pairs(5), vec![(2, 2), (3, 4)]);
        assert_eq!(twist_pairs(21), vec![(2, 2), (5, 17), (11, 20)]);
        assert!(twist_pairs(8).is_empty());
    }

    #[test]
    fn twist_pairs_brute_force() {
        for n in (3..=99u64).step_by(2) {
            let mut brute = Vec::new();
            for a in 1..n {
                for b in a..n {
                    if gcd_u64(a, n) == 1 && gcd_u64(b, n) == 1 && (a + b) % n == a * b % n {
                        brute.push((a, b));
                    }
                }
            }
            assert_eq!(twist_pairs(n), brute, "n = {n}");
        }
    }

    #[test]
    fn dataset_examples() {
        assert_eq!(
            datasets(2, 5).unwrap(),
            vec![ds("(5, 0, (2,2); (1,5))"), ds("(5, 0, (3,4); (3,5))")]
        );
        assert_eq!(datasets(1, 3).unwrap(), vec![ds("(3, 0, (2,2); (2,3))")]);
        assert_eq!(
            datasets(3, 3).unwrap(),
            vec![ds("(3, 0, (2,2); (1,3),(2,3),(2,3))")]
        );
    }

    #[test]
    fn trivial_queries_are_empty() {
        assert!(datasets(0, 3).unwrap().is_empty());
        assert!(datasets(5, 4).unwrap().is_empty());
        assert!(datasets(5, 1).unwrap().is_empty());
        assert!(root_degrees(0).is_empty());
    }

    #[test]
    fn class_cap() {
        assert_eq!(
            datasets_capped(10, 21, 2),
            Err(Error::ClassCapExceeded { cap: 2 })
        );
        assert_eq!(datasets_capped(10, 21, 3).unwrap().len(), 3);
        assert!(EnumQuery::new(3).class_cap(0).run().is_err());
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(oracle_datasets(2, 5).unwrap(), datasets(2, 5).unwrap());
        assert!(oracle_datasets(1, 5).unwrap().is_empty());
        assert!(oracle_datasets(7, 9)
            .unwrap()
            .contains(&ds("(9, 0, (2,2); (2,9),(1,3))")));
        assert!(matches!(
            oracle_datasets(3, 17),
            Err(Error::OracleRangeExceeded { .. })
        ));
        assert!(oracle_datasets(13, 3).is_err());
    }

    #[test]
    fn root_degree_examples() {
        assert_eq!(root_degrees(2), vec![3, 5]);
        assert_eq!(root_degrees(1), vec![3]);
    }

    #[test]
    fn has_root_examples() {
        assert!(has_root(10, 21));
        assert!(!has_root(3, 5));
        assert!(!has_root(0, 3));
        assert!(!has_root(4, 6));
    }

    #[test]
    fn has_root_agrees_with_enumeration() {
        for g in 0..=20 {
            for n in (3..=41).step_by(2) {
                assert_eq!(has_root(g, n), count_datasets(g, n) > 0, "g = {g}, n = {n}");
            }
        }
    }

    #[test]
    fn genus_set_examples() {
        assert_eq!(genus_set(5, 8), vec![2, 4, 6, 7, 8]);
        assert_eq!(genus_set(3, 5), vec![1, 2, 3, 4, 5]);
        assert!(genus_set(9, 7).contains(&7));
    }

    #[test]
    fn primary_examples() {
        let ms = primary_datasets(10, 21).unwrap();
        assert_eq!(ms.len(), 3);
        assert_eq!(
            primary_datasets(2, 3).unwrap(),
            vec![ds("(3, 0, (2,2); (1,3),(1,3))")]
        );
        assert!(primary_datasets(7, 9).unwrap().is_empty());
    }

    #[test]
    fn enumerated_sets_are_valid_canonical_and_distinct() {
        for g in 1..=14 {
            for n in (3..=29).step_by(2) {
                let list = datasets(g, n).unwrap();
                for (i, d) in list.iter().enumerate() {
                    assert!(d.is_valid(), "{d}");
                    assert!(d.is_canonical());
                    assert_eq!(d.genus(), g);
                    assert!(!d.cones().is_empty());
                    assert_eq!(gcd_u64((d.a() + d.b()) % n, n), 1);
                    for e in &list[i + 1..] {
                        assert!(!d.equivalent(e));
                    }
                }
            }
        }
    }

    #[test]
    fn stabilization_is_monotone() {
        for g in 1..=20 {
            for n in (3..=15).step_by(2) {
                let bigger: BTreeSet<DataSet> = datasets(g + n, n).unwrap().into_iter().collect();
                for d in datasets(g, n).unwrap() {
                    assert!(bigger.contains(&d.stabilize()), "{d}");
                }
            }
        }
    }
}
