//! Named families of roots and the large-degree classification.
//!
//! * Primary data sets (all cone orders equal to `n`) reach every genus except
//!   those in the triangular set `T(n)`.
//! * Margalit-Schleimer roots have the maximal degree `2g + 1`.
//! * A `(d,e)`-root has `g0 = 0` and exactly two cones, of orders `d` and `e`;
//!   its degree is `lcm(d, e)` and its genus `n - (d + e)/(2 gcd(d, e))`.
//!
//! Every root of degree `n >= g` is Margalit-Schleimer, a `(d,e)`-root, or the
//! unique cube root of `t_4`.

use std::fmt;

use crate::dataset::DataSet;
use crate::enumeration::twist_pairs;
use crate::error::{Error, Result};
use crate::numtheory::{
    bezout_avoiding_primes, coprime_divisor_pairs, factorize, gcd_u64, lcm_u64, reduce, MAX_VALUE,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    MargalitSchleimer,
    CubeOfT4,
    DeRoot,
    Primary,
    Other,
}

impl Tag {
    pub fn as_str(self) -> &'static str {
        match self {
            Tag::MargalitSchleimer => "MARGALIT_SCHLEIMER",
            Tag::CubeOfT4 => "CUBE_OF_T4",
            Tag::DeRoot => "DE_ROOT",
            Tag::Primary => "PRIMARY",
            Tag::Other => "OTHER",
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootClass {
    pub dataset: DataSet,
    pub tag: Tag,
    pub de_params: Option<(u64, u64)>,
}

/// Genera excluded from primary roots of degree `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularSet {
    pub n: u64,
    pub members: Vec<u64>,
}

impl TriangularSet {
    pub fn contains(&self, g: u64) -> bool {
        self.members.binary_search(&g).is_ok()
    }
}

fn require_odd(n: u64) -> Result<()> {
    if n < 3 || n.is_multiple_of(2) || n > MAX_VALUE {
        return Err(Error::PreconditionViolated(format!(
            "expected an odd degree in [3, {MAX_VALUE}], got {n}"
        )));
    }
    Ok(())
}

/// `T(n)`: the union over `0 <= g0 < n0` of `{ g0 + m n0 : 0 <= m <= 2 g0 }`,
/// where `n0 = (n - 1)/2`.
pub fn t_set(n: u64) -> Result<TriangularSet> {
    require_odd(n)?;
    let n0 = (n - 1) / 2;
    let mut members: Vec<u64> = (0..n0)
        .flat_map(|g0| (0..=2 * g0).map(move |m| g0 + m * n0))
        .collect();
    members.sort_unstable();
    members.dedup();
    Ok(TriangularSet { n, members })
}

/// All Margalit-Schleimer data sets for genus `g`: degree `2g + 1`, one cone
/// of full order with `c = -a - b`.
pub fn ms_roots(g: u64) -> Result<Vec<DataSet>> {
    if g == 0 {
        return Err(Error::PreconditionViolated("genus must be positive".into()));
    }
    let n = 2 * g + 1;
    require_odd(n)?;
    let mut out: Vec<DataSet> = twist_pairs(n)
        .into_iter()
        .map(|(a, b)| {
            let c = reduce(-((a + b) as i64), n);
            DataSet::new(n, 0, (a as i64, b as i64), &[(c as i64, n)])
                .expect("in range")
                .canonicalize()
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Number of Margalit-Schleimer roots of degree `n`: `(U(n) + 1)/2` with
/// `U(n) = prod p^(k-1) (p - 2)`.
pub fn ms_count(n: u64) -> Result<u64> {
    require_odd(n)?;
    let units_with_unit_complement: u64 = factorize(n)?
        .factors()
        .iter()
        .map(|&(p, k)| p.pow(k - 1) * (p - 2))
        .product();
    Ok(units_with_unit_complement.div_ceil(2))
}

/// Genera `g` for which `n` is the degree of some `(d,e)`-root of `t_{g+1}`.
pub fn de_root_genera(n: u64) -> Result<Vec<u64>> {
    require_odd(n)?;
    let mut out: Vec<u64> = coprime_divisor_pairs(n)?
        .into_iter()
        .filter_map(|(d1, d2)| {
            let d0 = n / (d1 * d2);
            (d0 * d1 >= 3 && d0 * d2 >= 3).then(|| n - (d1 + d2) / 2)
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Degrees of the `(d,e)`-roots of `t_{g+1}`. Only `g + 1 <= n < 6(g+2)/5`
/// can occur.
pub fn de_roots(g: u64) -> Result<Vec<u64>> {
    if g == 0 {
        return Err(Error::PreconditionViolated("genus must be positive".into()));
    }
    let mut out = Vec::new();
    let mut n = g + 1;
    if n.is_multiple_of(2) {
        n += 1;
    }
    while 5 * n < 6 * (g + 2) {
        // d1 + d2 = 2(n - g) for the witnessing pair.
        let target = 2 * (n - g);
        let hit = coprime_divisor_pairs(n)?.into_iter().any(|(d1, d2)| {
            let d0 = n / (d1 * d2);
            d1 + d2 == target && d0 * d1 >= 3 && d0 * d2 >= 3
        });
        if hit {
            out.push(n);
        }
        n += 2;
    }
    Ok(out)
}

/// Builds a `(d,e)`-root: `a = b = 2`, `c1 = -4 l1 mod d`, `c2 = -4 l2 mod e`
/// where `l1 (n/d) + l2 (n/e) = 1` and `l1`, `l2` avoid every prime of `d e`.
pub fn de_construct(d: u64, e: u64) -> Result<DataSet> {
    require_odd(d)?;
    require_odd(e)?;
    let n = lcm_u64(d, e);
    if n > MAX_VALUE {
        return Err(Error::RangeExceeded(format!("lcm({d}, {e}) = {n}")));
    }
    let mut primes: Vec<u64> = factorize(d)?.primes().collect();
    primes.extend(factorize(e)?.primes());
    let w = bezout_avoiding_primes(n / d, n / e, &primes)?;
    let c1 = reduce(-4 * (w.c1 % d as i64), d) as i64;
    let c2 = reduce(-4 * (w.c2 % e as i64), e) as i64;
    Ok(DataSet::new(n, 0, (2, 2), &[(c1, d), (c2, e)])?.canonicalize())
}

const CUBE_OF_T4: (u64, [(u64, u64); 3]) = (3, [(1, 3), (2, 3), (2, 3)]);

fn is_cube_of_t4(ds: &DataSet) -> bool {
    let (n, cones) = CUBE_OF_T4;
    ds.degree() == n
        && ds.g0() == 0
        && (ds.a(), ds.b()) == (2, 2)
        && ds.cones().len() == 3
        && ds
            .cones()
            .iter()
            .zip(cones)
            .all(|(cone, (c, order))| cone.residue == c && cone.order == order)
}

/// Tags a valid data set, by precedence Margalit-Schleimer, cube of `t_4`,
/// `(d,e)`-root, primary, other.
pub fn classify(ds: &DataSet) -> RootClass {
    let ds = ds.canonicalize();
    let n = ds.degree();
    let cones = ds.cones();
    let (tag, de_params) =
        if ds.g0() == 0 && cones.len() == 1 && cones[0].order == n && n == 2 * ds.genus() + 1 {
            (Tag::MargalitSchleimer, None)
        } else if is_cube_of_t4(&ds) {
            (Tag::CubeOfT4, None)
        } else if ds.g0() == 0 && cones.len() == 2 && lcm_u64(cones[0].order, cones[1].order) == n {
            (Tag::DeRoot, Some((cones[0].order, cones[1].order)))
        } else if ds.is_primary() {
            (Tag::Primary, None)
        } else {
            (Tag::Other, None)
        };
    RootClass {
        dataset: ds,
        tag,
        de_params,
    }
}

/// Genus of a `(d,e)`-root, `n - (d + e)/(2 gcd(d, e))`.
pub fn de_genus(d: u64, e: u64) -> u64 {
    lcm_u64(d, e) - (d + e) / (2 * gcd_u64(d, e))
}
