//! Closed-form homotopy types for the graph families with known answers, and
//! the bridge from a symbolic homotopy type to the homology it predicts.
//!
//! Every evaluator returns either `point` or a wedge of spheres; sphere
//! counts are exact big integers because the tree formulas stack exponents.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::homology::HomologySummary;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("complete multipartite formula needs at least two parts")]
    TooFewParts,
    #[error("multipartite part sizes must be positive")]
    ZeroPart,
    #[error("leafy-graph formula needs every leaf count positive")]
    ZeroLeafCount,
    #[error("cycle formula needs n >= 3, got {0}")]
    CycleTooSmall(usize),
}

/// A homotopy type that is either a point or a wedge of spheres.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomotopyType {
    Contractible,
    /// Nonempty, sorted by dimension, counts positive.
    WedgeOfSpheres(Vec<(usize, BigUint)>),
}

impl HomotopyType {
    /// Normalizing constructor: merges repeated dimensions, drops zero
    /// counts, and collapses the empty wedge to a point.
    pub fn wedge(spheres: impl IntoIterator<Item = (usize, BigUint)>) -> HomotopyType {
        let mut by_dim: BTreeMap<usize, BigUint> = BTreeMap::new();
        for (dim, count) in spheres {
            if !count.is_zero() {
                *by_dim.entry(dim).or_default() += count;
            }
        }
        if by_dim.is_empty() {
            HomotopyType::Contractible
        } else {
            HomotopyType::WedgeOfSpheres(by_dim.into_iter().collect())
        }
    }

    pub fn sphere(dim: usize) -> HomotopyType {
        HomotopyType::wedge([(dim, BigUint::one())])
    }

    pub fn spheres(dim: usize, count: impl Into<BigUint>) -> HomotopyType {
        HomotopyType::wedge([(dim, count.into())])
    }

    pub fn is_contractible(&self) -> bool {
        matches!(self, HomotopyType::Contractible)
    }

    /// Join of wedges of spheres: sphere dimensions add plus one, counts
    /// multiply over pairs; joining with a point is a cone, hence a point.
    pub fn join(&self, other: &HomotopyType) -> HomotopyType {
        match (self, other) {
            (HomotopyType::WedgeOfSpheres(a), HomotopyType::WedgeOfSpheres(b)) => {
                let mut out = Vec::new();
                for (da, ca) in a {
                    for (db, cb) in b {
                        out.push((da + db + 1, ca * cb));
                    }
                }
                HomotopyType::wedge(out)
            }
            _ => HomotopyType::Contractible,
        }
    }
}

impl fmt::Display for HomotopyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomotopyType::Contractible => write!(f, "point"),
            HomotopyType::WedgeOfSpheres(spheres) => {
                let parts: Vec<String> = spheres
                    .iter()
                    .map(|(dim, count)| format!("{count} x S^{dim}"))
                    .collect();
                write!(f, "wedge[{}]", parts.join(", "))
            }
        }
    }
}

/// Free homology ranks predicted by a homotopy type (torsion is always
/// empty for a wedge of spheres).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExpectedHomology {
    pub by_dimension: BTreeMap<usize, BigUint>,
}

pub fn expected_homology(ht: &HomotopyType) -> ExpectedHomology {
    match ht {
        HomotopyType::Contractible => ExpectedHomology::default(),
        HomotopyType::WedgeOfSpheres(spheres) => ExpectedHomology {
            by_dimension: spheres.iter().cloned().collect(),
        },
    }
}

impl ExpectedHomology {
    /// Exact agreement with a computed summary: every window dimension must
    /// carry the predicted free rank and no torsion, and no predicted
    /// dimension may fall outside the window.
    pub fn matches(&self, hom: &HomologySummary) -> bool {
        let (lo, hi) = hom.window();
        if self.by_dimension.keys().any(|&d| (d as isize) < lo || (d as isize) > hi) {
            return false;
        }
        for d in lo..=hi {
            let group = hom.group(d).expect("dimension inside window");
            if !group.torsion.is_empty() {
                return false;
            }
            let want = self
                .by_dimension
                .get(&usize::try_from(d).expect("window is nonnegative"))
                .cloned()
                .unwrap_or_default();
            if BigUint::from(group.rank) != want {
                return false;
            }
        }
        true
    }
}

/// `C(a, b)`, zero outside `0 <= b <= a`; the theorem statements lean on
/// that convention at their parameter boundaries.
pub fn binomial(a: i64, b: i64) -> BigUint {
    if b < 0 || b > a {
        return BigUint::zero();
    }
    let (a, b) = (a as u64, (b as u64).min(a as u64 - b as u64));
    let mut acc = BigUint::one();
    for i in 0..b {
        acc = acc * (a - i) / (i + 1);
    }
    acc
}

/// `Ind_r` of the complete s-partite graph: a wedge of
/// `C(M-1, r) - sum C(m_i - 1, r)` spheres of dimension `r - 1`.
pub fn ht_complete_multipartite(parts: &[usize], r: usize) -> Result<HomotopyType, FormulaError> {
    if parts.len() < 2 {
        return Err(FormulaError::TooFewParts);
    }
    if parts.contains(&0) {
        return Err(FormulaError::ZeroPart);
    }
    assert!(r >= 1);
    let total: usize = parts.iter().sum();
    let mut count = binomial(total as i64 - 1, r as i64);
    for &m in parts {
        let part_term = binomial(m as i64 - 1, r as i64);
        debug_assert!(part_term <= count);
        count -= part_term;
    }
    Ok(HomotopyType::spheres(r - 1, count))
}

/// `Ind_r(K_n)` is the `(r-1)`-skeleton of the `(n-1)`-simplex: a wedge of
/// `C(n-1, r)` spheres of dimension `r - 1`.
pub fn ht_complete(n: usize, r: usize) -> HomotopyType {
    assert!(n >= 1 && r >= 1);
    HomotopyType::spheres(r - 1, binomial(n as i64 - 1, r as i64))
}

/// `Ind_r(W(G))` for connected `G` on `n` vertices: `C(n-1, r-n)` spheres of
/// dimension `r - 1` when `n <= r <= 2n - 1`, a point otherwise.
pub fn ht_whiskered(n: usize, r: usize) -> HomotopyType {
    assert!(n >= 1 && r >= 1);
    if n <= r && r < 2 * n {
        HomotopyType::spheres(r - 1, binomial(n as i64 - 1, r as i64 - n as i64))
    } else {
        HomotopyType::Contractible
    }
}

/// `Ind_r(G)` for a connected graph whose non-leaf vertices `a_1..a_n` each
/// carry `l_i > 0` pendant leaves: `C(sum l_i - 1, r - n)` spheres of
/// dimension `r - 1` when `r >= n`, a point otherwise. Also covers the
/// caterpillar identity `Ind_r(P_n^L) ~ Ind_r(C_n^L)`.
pub fn ht_leafy(leaf_counts: &[usize], r: usize) -> Result<HomotopyType, FormulaError> {
    if leaf_counts.contains(&0) {
        return Err(FormulaError::ZeroLeafCount);
    }
    assert!(r >= 1);
    let n = leaf_counts.len();
    let total: usize = leaf_counts.iter().sum();
    if r >= n {
        Ok(HomotopyType::spheres(r - 1, binomial(total as i64 - 1, r as i64 - n as i64)))
    } else {
        Ok(HomotopyType::Contractible)
    }
}

/// `Ind_{d-2}(P_n)`: one sphere of dimension `dk - 2k - 1` when `n = dk` or
/// `dk - 1`, a point otherwise.
pub fn ht_path(n: usize, d: usize) -> HomotopyType {
    assert!(n >= 1 && d >= 3);
    let k = if n.is_multiple_of(d) {
        n / d
    } else if (n + 1).is_multiple_of(d) {
        (n + 1) / d
    } else {
        return HomotopyType::Contractible;
    };
    HomotopyType::sphere(d * k - 2 * k - 1)
}

/// `Ind_{d-2}(C_n)`: for `n >= d`, `d - 1` spheres of dimension
/// `dk - 2k - 1` at `n = dk` and one sphere of dimension `dk - 2k + t - 2`
/// at `n = dk + t`; below `d` the complex is a point or a single sphere.
pub fn ht_cycle(n: usize, d: usize) -> Result<HomotopyType, FormulaError> {
    if n < 3 {
        return Err(FormulaError::CycleTooSmall(n));
    }
    assert!(d >= 3);
    if n <= d - 2 {
        return Ok(HomotopyType::Contractible);
    }
    if n == d - 1 {
        // connected graph on r + 1 vertices
        return Ok(HomotopyType::sphere(d - 3));
    }
    let k = n / d;
    let t = n - d * k;
    Ok(if t == 0 {
        HomotopyType::spheres(d * k - 2 * k - 1, d - 1)
    } else {
        HomotopyType::sphere(d * k - 2 * k + t - 2)
    })
}

/// Splits `r >= 1` as `(m^t - 1)/(m - 1) + s` with `0 <= s <= m^t - 1`;
/// every positive `r` decomposes uniquely this way.
pub fn decompose_r(m: usize, r: usize) -> (usize, usize) {
    assert!(m >= 2 && r >= 1);
    let mut t = 0usize;
    let mut threshold = 0usize; // (m^t - 1)/(m - 1)
    let mut power = 1usize; // m^t
    while threshold + power <= r {
        threshold += power;
        power *= m;
        t += 1;
    }
    (t, r - threshold)
}

/// `Ind_r(B_h^m)` for the perfect m-ary tree of height `h`. With
/// `r = (m^t - 1)/(m - 1) + s`, heights congruent to `t` or `t + 1` modulo
/// `t + 2` give wedges whose size and dimension grow geometrically; every
/// other height is contractible. The closed form is stated for `m >= 3`;
/// `m = 2` evaluates the same expressions (callers may flag it).
pub fn ht_mary_tree(m: usize, h: usize, r: usize) -> HomotopyType {
    assert!(m >= 2 && r >= 1);
    let (t, s) = decompose_r(m, r);
    if h < t {
        // r is at least the vertex count
        return HomotopyType::Contractible;
    }
    if h == t {
        return HomotopyType::spheres(r - 1, binomial(pow_big(m, t) as i64 - 1, s as i64));
    }
    let base = binomial(pow_big(m, t) as i64 - 1, s as i64);
    let geometric = |terms: usize| -> BigUint {
        // 1 + m^{t+2} + m^{2(t+2)} + ... (terms summands)
        let step = BigUint::from(m).pow((t + 2) as u32);
        let mut acc = BigUint::zero();
        let mut cur = BigUint::one();
        for _ in 0..terms {
            acc += &cur;
            cur *= &step;
        }
        acc
    };
    if (h - t).is_multiple_of(t + 2) {
        let k = (h - t) / (t + 2);
        let weight = geometric(k + 1);
        let count = pow_biguint(&base, &weight);
        let dim = usize::try_from(&weight * r - 1usize).expect("sphere dimension fits");
        return HomotopyType::spheres(dim, count);
    }
    if (h - t - 1).is_multiple_of(t + 2) {
        let k = (h - t - 1) / (t + 2) + 1;
        let weight = geometric(k) * m;
        let count = pow_biguint(&base, &weight);
        let dim = usize::try_from(&weight * r - 1usize).expect("sphere dimension fits");
        return HomotopyType::spheres(dim, count);
    }
    HomotopyType::Contractible
}

fn pow_big(m: usize, e: usize) -> usize {
    m.checked_pow(e as u32).expect("power fits in usize")
}

fn pow_biguint(base: &BigUint, exp: &BigUint) -> BigUint {
    // the exponent is a face-count weight; at usable parameter sizes it fits
    let e = u32::try_from(exp).expect("wedge-count exponent fits in u32");
    base.pow(e)
}
