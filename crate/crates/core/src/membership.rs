//! Membership in `P(Λ)` and `max(Λ)`, and the lattice parametrization of
//! `max(Λ)`.
//!
//! A content `c` lies in `P(Λ)` iff the dominant weight in its Weyl orbit has
//! non-negative content: dominant weights below `Λ` are weights of `V(Λ)` and
//! `P(Λ)` is `W`-stable.
//!
//! Maximal weights are parametrized by `m ∈ Z^ℓ`:
//! `η_m = Λ - Σ_{i≥1} m_i α_i - s(m) δ` with content `(s, s+m_1, …, s+m_ℓ)`
//! and hub `θ_i = a_i + m_{i-1} + m_{i+1} - 2 m_i` (indices mod `e`, `m_0 = 0`).

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::root_system::{Content, HighestWeight, Hub};

/// Default cap on simple reflections in [`dominant_rep`].
pub const DEFAULT_REFLECTION_CAP: usize = 1_000_000;

/// A point `m = (m_1, …, m_ℓ)` of the lattice parametrizing `max(Λ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn origin(ell: usize) -> Self {
        LatticePoint(vec![0; ell])
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(v: Vec<i64>) -> Self {
        LatticePoint(v)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [m] = self.0.as_slice() {
            return write!(f, "{m}");
        }
        f.write_str("(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// Dominant weight in the Weyl orbit of a content plus the reflections used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dominant {
    pub content: Content,
    pub word: Vec<usize>,
}

/// An element `η_m` of `max(Λ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaxWeight {
    pub m: LatticePoint,
    pub s: i64,
    pub content: Content,
}

/// One row of a `max(Λ)` table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaxRow {
    pub m: LatticePoint,
    pub hub: Hub,
    pub defect: i64,
    pub content: Content,
    pub degree: i64,
}

/// Table rows for the given lattice points, straight from the oracle.
pub fn max_table(lambda: &HighestWeight, points: &[LatticePoint]) -> Result<Vec<MaxRow>> {
    points
        .iter()
        .map(|m| {
            let w = s_of_m(lambda, m)?;
            Ok(MaxRow {
                m: m.clone(),
                hub: lambda.hub(&w.content),
                defect: lambda.defect(&w.content),
                degree: w.content.degree(),
                content: w.content,
            })
        })
        .collect()
}

pub fn dominant_rep(lambda: &HighestWeight, c: &Content) -> Result<Dominant> {
    dominant_rep_with_cap(lambda, c, DEFAULT_REFLECTION_CAP)
}

/// Reflects at the smallest index with a negative hub entry until the hub is
/// dominant.
pub fn dominant_rep_with_cap(lambda: &HighestWeight, c: &Content, cap: usize) -> Result<Dominant> {
    let mut walk = Walk::new(lambda, c);
    while let Some(i) = walk.first_negative() {
        if walk.word.len() >= cap {
            return Err(Error::IterationLimitExceeded { cap });
        }
        walk.reflect(i);
    }
    Ok(Dominant {
        content: walk.content,
        word: walk.word,
    })
}

struct Walk<'a> {
    lambda: &'a HighestWeight,
    content: Content,
    hub: Hub,
    word: Vec<usize>,
}

impl<'a> Walk<'a> {
    fn new(lambda: &'a HighestWeight, c: &Content) -> Self {
        Walk {
            lambda,
            content: c.clone(),
            hub: lambda.hub(c),
            word: Vec::new(),
        }
    }

    fn first_negative(&self) -> Option<usize> {
        self.hub.0.iter().position(|&t| t < 0)
    }

    // θ'_j = θ_j - θ_i C_ij keeps the hub in step without recomputing C·c.
    fn reflect(&mut self, i: usize) {
        let theta_i = self.hub[i];
        self.content.0[i] += theta_i;
        let rank = self.lambda.rank();
        for j in 0..rank.e() {
            self.hub.0[j] -= theta_i * rank.entry(i, j);
        }
        self.word.push(i);
    }
}

/// Whether `Λ - Σ c_i α_i` is a weight of `V(Λ)`.
pub fn in_p(lambda: &HighestWeight, c: &Content) -> Result<bool> {
    if !c.is_nonnegative() || lambda.defect(c) < 0 {
        return Ok(false);
    }
    // Reflections at negative hub entries only lower content entries, so a
    // negative entry met on the way is final.
    let mut walk = Walk::new(lambda, c);
    while let Some(i) = walk.first_negative() {
        if walk.word.len() >= DEFAULT_REFLECTION_CAP {
            return Err(Error::IterationLimitExceeded {
                cap: DEFAULT_REFLECTION_CAP,
            });
        }
        walk.reflect(i);
        if walk.content[i] < 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `λ ∈ P(Λ)` and `λ + δ ∉ P(Λ)`.
pub fn is_max(lambda: &HighestWeight, c: &Content) -> Result<bool> {
    if !in_p(lambda, c)? {
        return Ok(false);
    }
    let up = c.add_delta(-1);
    Ok(!up.is_nonnegative() || !in_p(lambda, &up)?)
}

/// Content `(s, s+m_1, …, s+m_ℓ)`.
pub fn lattice_content(m: &LatticePoint, s: i64) -> Content {
    Content(std::iter::once(s).chain(m.0.iter().map(|mi| s + mi)).collect())
}

/// Hub of `η_m`; independent of the δ-shift.
pub fn lattice_hub(lambda: &HighestWeight, m: &LatticePoint) -> Hub {
    lambda.hub(&lattice_content(m, 0))
}

/// Default search cap for [`s_of_m`]: `r·(1 + Σ|m_i|)²`.
pub fn default_s_cap(lambda: &HighestWeight, m: &LatticePoint) -> i64 {
    let spread = 1 + m.0.iter().map(|x| x.abs()).sum::<i64>();
    lambda.level() * spread * spread
}

pub fn s_of_m(lambda: &HighestWeight, m: &LatticePoint) -> Result<MaxWeight> {
    s_of_m_with_cap(lambda, m, default_s_cap(lambda, m))
}

/// Smallest `s` with `(s, s+m_1, …, s+m_ℓ) ∈ P(Λ)`, searched upward from the
/// first `s` that makes the content non-negative.
pub fn s_of_m_with_cap(lambda: &HighestWeight, m: &LatticePoint, cap: i64) -> Result<MaxWeight> {
    assert_eq!(m.0.len(), lambda.e() - 1, "lattice point length");
    let start = m.0.iter().map(|&x| -x).max().unwrap_or(0).max(0);
    let mut s = start;
    loop {
        if s > cap {
            return Err(Error::SearchLimitExceeded { m: m.0.clone(), cap });
        }
        let content = lattice_content(m, s);
        if in_p(lambda, &content)? {
            return Ok(MaxWeight {
                m: m.clone(),
                s,
                content,
            });
        }
        s += 1;
    }
}

/// `Σ_j j·ψ_j mod e`; zero exactly when the level-zero vector `ψ` lies in the
/// root lattice.
pub fn congruence_residue(psi: &[i64]) -> usize {
    let e = psi.len() as i64;
    let weighted: i64 = psi.iter().enumerate().map(|(j, p)| j as i64 * p).sum();
    weighted.rem_euclid(e) as usize
}

/// Finite Cartan matrix (residues `1..e`) used to solve for `m`.
fn finite_cartan(lambda: &HighestWeight) -> Vec<Vec<i64>> {
    let rank = lambda.rank();
    (1..rank.e())
        .map(|i| (1..rank.e()).map(|j| rank.entry(i, j)).collect())
        .collect()
}

/// Lattice point whose hub is `target`, or `None` when the congruence test
/// rules it out.
pub fn hub_to_lattice(lambda: &HighestWeight, target: &Hub) -> Result<Option<LatticePoint>> {
    assert_eq!(target.len(), lambda.e(), "hub length");
    if target.level() != lambda.level() {
        return Err(Error::LevelMismatch {
            expected: lambda.level(),
            found: target.level(),
        });
    }
    let psi: Vec<i64> = lambda
        .coefficients()
        .iter()
        .zip(&target.0)
        .map(|(a, t)| a - t)
        .collect();
    if congruence_residue(&psi) != 0 {
        return Ok(None);
    }
    let solution =
        linalg::solve(&finite_cartan(lambda), &psi[1..]).expect("finite Cartan matrix of type A is invertible");
    let m = linalg::to_integers(&solution).expect("congruence condition guarantees an integral solution");
    Ok(Some(LatticePoint(m)))
}

/// Corner of the defect-`d` simplex that is large in component `i`: starts
/// from the level-`r` hub with `r + ℓ(d+1)` at `i` and `-(d+1)` elsewhere and
/// nudges `ψ = a - ν` into the root lattice by moving one unit from `ψ_j` to
/// `ψ_0`, where `j` is the congruence residue.
pub fn nu_prime_corner(lambda: &HighestWeight, d: i64, i: usize) -> (Hub, LatticePoint) {
    let e = lambda.e();
    assert!(i < e, "residue out of range");
    let ell = (e - 1) as i64;
    let nu: Vec<i64> = (0..e)
        .map(|j| {
            if j == i {
                lambda.level() + ell * (d + 1)
            } else {
                -(d + 1)
            }
        })
        .collect();
    let mut psi: Vec<i64> = lambda.coefficients().iter().zip(&nu).map(|(a, v)| a - v).collect();
    let j = congruence_residue(&psi);
    if j != 0 {
        psi[j] -= 1;
        psi[0] += 1;
    }
    let hub = Hub(lambda.coefficients().iter().zip(&psi).map(|(a, p)| a - p).collect());
    let m = hub_to_lattice(lambda, &hub)
        .expect("adjusted corner keeps the level")
        .expect("adjusted corner satisfies the congruence");
    (hub, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lam(a: &[i64]) -> HighestWeight {
        HighestWeight::new(a.to_vec()).unwrap()
    }

    fn c(v: &[i64]) -> Content {
        Content(v.to_vec())
    }

    fn lp(v: &[i64]) -> LatticePoint {
        LatticePoint(v.to_vec())
    }

    #[test]
    fn dominant_rep_examples() {
        let l = lam(&[2, 1]);
        let d = dominant_rep(&l, &c(&[1, 0])).unwrap();
        assert_eq!(d.content, c(&[1, 0]));
        assert!(d.word.is_empty());

        let d = dominant_rep(&l, &c(&[0, 0])).unwrap();
        assert_eq!(d.content, c(&[0, 0]));

        // hub [12,-9] -> [-6,9] -> [6,-3] -> [0,3]; defect 10 throughout.
        let d = dominant_rep(&l, &c(&[10, 15])).unwrap();
        assert_eq!(d.content, c(&[4, 3]));
        assert_eq!(d.word, vec![1, 0, 1]);
        assert_eq!(l.defect(&d.content), 10);
    }

    #[test]
    fn dominant_rep_cap() {
        let l = lam(&[2, 1]);
        assert_eq!(
            dominant_rep_with_cap(&l, &c(&[10, 15]), 2),
            Err(Error::IterationLimitExceeded { cap: 2 })
        );
    }

    #[test]
    fn membership_examples() {
        let l = lam(&[2, 1]);
        assert!(in_p(&l, &c(&[1, 3])).unwrap());
        assert!(in_p(&l, &c(&[1, 1])).unwrap());
        assert!(!in_p(&lam(&[0, 1]), &c(&[1, 0])).unwrap());
        assert!(!in_p(&l, &c(&[0, 2])).unwrap());
        assert!(!in_p(&l, &c(&[-1, 0])).unwrap());
    }

    #[test]
    fn max_examples() {
        let l = lam(&[2, 1]);
        assert!(is_max(&l, &c(&[0, 0])).unwrap());
        assert!(!is_max(&l, &c(&[1, 1])).unwrap());
        assert!(is_max(&l, &c(&[2, 0])).unwrap());
        assert!(!is_max(&l, &c(&[0, 2])).unwrap());
    }

    #[test]
    fn s_of_m_examples() {
        let l = lam(&[2, 1]);
        let w = s_of_m(&l, &lp(&[0])).unwrap();
        assert_eq!((w.s, w.content.clone()), (0, c(&[0, 0])));
        let w = s_of_m(&l, &lp(&[2])).unwrap();
        assert_eq!((w.s, w.content.degree()), (1, 4));
        assert_eq!(w.content, c(&[1, 3]));
        // s = 4, 5, 6 give defects -8, -5, -2.
        for (s, d) in [(4, -8), (5, -5), (6, -2)] {
            assert_eq!(l.defect(&lattice_content(&lp(&[-4]), s)), d);
        }
        let w = s_of_m(&l, &lp(&[-4])).unwrap();
        assert_eq!((w.s, w.content.clone()), (7, c(&[7, 3])));
        assert_eq!(w.content.degree(), 10);
    }

    #[test]
    fn s_of_m_cap() {
        let l = lam(&[2, 1]);
        assert!(matches!(
            s_of_m_with_cap(&l, &lp(&[-4]), 6),
            Err(Error::SearchLimitExceeded { .. })
        ));
    }

    #[test]
    fn hub_to_lattice_examples() {
        let l = lam(&[2, 1]);
        assert_eq!(hub_to_lattice(&l, &Hub(vec![4, -1])).unwrap(), Some(lp(&[1])));
        assert_eq!(hub_to_lattice(&l, &Hub(vec![2, 1])).unwrap(), Some(lp(&[0])));
        assert_eq!(hub_to_lattice(&l, &Hub(vec![3, 0])).unwrap(), None);
        assert_eq!(
            hub_to_lattice(&l, &Hub(vec![3, 1])),
            Err(Error::LevelMismatch { expected: 3, found: 4 })
        );

        let l3 = lam(&[1, 1, 1]);
        // ψ = (-2,1,1): 1·1 + 2·1 = 3 ≡ 0 mod 3.
        assert_eq!(congruence_residue(&[-2, 1, 1]), 0);
        let m = hub_to_lattice(&l3, &Hub(vec![3, 0, 0])).unwrap().unwrap();
        assert_eq!(m, box_search(&l3, &Hub(vec![3, 0, 0]), 4).unwrap());
        assert_eq!(m, lp(&[1, 1]));
        assert_eq!(hub_to_lattice(&l3, &Hub(vec![2, 1, 0])).unwrap(), None);
    }

    // Exhaustive oracle over a box of lattice points.
    fn box_search(l: &HighestWeight, target: &Hub, radius: i64) -> Option<LatticePoint> {
        let ell = l.e() - 1;
        let mut m = vec![-radius; ell];
        loop {
            let p = LatticePoint(m.clone());
            if &lattice_hub(l, &p) == target {
                return Some(p);
            }
            let mut k = 0;
            while k < ell && m[k] == radius {
                m[k] = -radius;
                k += 1;
            }
            if k == ell {
                return None;
            }
            m[k] += 1;
        }
    }

    #[test]
    fn nu_prime_corner_examples() {
        let l = lam(&[2, 1]);
        // ν_0 = [7,-4], ψ = (-5,5), residue 1 -> ψ' = (-4,4).
        let (hub, m) = nu_prime_corner(&l, 3, 0);
        assert_eq!(hub, Hub(vec![6, -3]));
        assert_eq!(m, lp(&[2]));
        assert_eq!(lattice_hub(&l, &m), hub);
        // ν_1 = [-4,7], ψ = (6,-6), residue 0.
        let (hub, m) = nu_prime_corner(&l, 3, 1);
        assert_eq!(hub, Hub(vec![-4, 7]));
        assert_eq!(m, lp(&[-3]));
        assert_eq!(lattice_hub(&l, &m), hub);
    }

    #[test]
    fn nu_prime_corner_off_components() {
        for a in [vec![1, 1, 1], vec![2, 0, 1, 0], vec![0, 3], vec![1, 0, 0, 0, 2]] {
            let l = HighestWeight::new(a).unwrap();
            for d in 1..6 {
                for i in 0..l.e() {
                    let (hub, m) = nu_prime_corner(&l, d, i);
                    assert_eq!(lattice_hub(&l, &m), hub);
                    assert_eq!(hub.level(), l.level());
                    for j in (0..l.e()).filter(|&j| j != i) {
                        assert!(hub[j] <= -d, "{hub} at d={d} i={i}");
                    }
                }
            }
        }
    }

    // Every point of a box yields a maximal weight, and s is minimal.
    #[test]
    fn s_of_m_box() {
        for a in [vec![2, 1], vec![1, 0], vec![1, 1, 1], vec![2, 0, 1], vec![1, 0, 0, 1]] {
            let l = HighestWeight::new(a).unwrap();
            let ell = l.e() - 1;
            let radius = if ell == 3 { 3 } else { 8 };
            let mut m = vec![-radius; ell];
            'outer: loop {
                let p = LatticePoint(m.clone());
                let w = s_of_m(&l, &p).unwrap();
                assert!(is_max(&l, &w.content).unwrap());
                if w.s > 0 {
                    let below = lattice_content(&p, w.s - 1);
                    assert!(!below.is_nonnegative() || !in_p(&l, &below).unwrap());
                }
                assert_eq!(l.hub(&w.content), lattice_hub(&l, &p));
                // δ-shifts commute with reflections, so s is fixed by the
                // dominant representative of the s = 0 content.
                let dom = dominant_rep(&l, &lattice_content(&p, 0)).unwrap();
                let min = dom.content.0.iter().copied().min().unwrap();
                assert_eq!(w.s, -min);
                for x in m.iter_mut() {
                    if *x < radius {
                        *x += 1;
                        continue 'outer;
                    }
                    *x = -radius;
                }
                break;
            }
        }
    }

    #[test]
    fn early_exit_agrees_with_full_reduction() {
        let l = lam(&[1, 2, 0]);
        for x in 0..9 {
            for y in 0..9 {
                for z in 0..9 {
                    let cont = c(&[x, y, z]);
                    let full = l.defect(&cont) >= 0 && dominant_rep(&l, &cont).unwrap().content.is_nonnegative();
                    assert_eq!(in_p(&l, &cont).unwrap(), full, "{cont}");
                }
            }
        }
    }

    fn weight_and_content() -> impl Strategy<Value = (HighestWeight, Content)> {
        (2usize..=5)
            .prop_flat_map(|e| {
                (
                    proptest::collection::vec(0i64..4, e),
                    proptest::collection::vec(0i64..15, e),
                )
            })
            .prop_filter("positive level", |(a, _)| a.iter().sum::<i64>() > 0)
            .prop_map(|(a, c)| (HighestWeight::new(a).unwrap(), Content(c)))
    }

    proptest! {
        #[test]
        fn membership_is_weyl_stable((l, c) in weight_and_content(), i in 0usize..5) {
            let i = i % l.e();
            let r = l.reflect(&c, i);
            prop_assert_eq!(in_p(&l, &c).unwrap(), in_p(&l, &r).unwrap());
        }

        #[test]
        fn negative_defect_fast_path_agrees((l, c) in weight_and_content()) {
            if l.defect(&c) < 0 {
                let d = dominant_rep(&l, &c).unwrap();
                prop_assert!(!d.content.is_nonnegative());
            }
        }

        #[test]
        fn dominant_rep_is_dominant((l, c) in weight_and_content()) {
            let d = dominant_rep(&l, &c).unwrap();
            prop_assert!(l.hub(&d.content).is_dominant());
            prop_assert_eq!(l.defect(&d.content), l.defect(&c));
            let mut replay = c.clone();
            for &i in &d.word {
                replay = l.reflect(&replay, i);
            }
            prop_assert_eq!(replay, d.content);
        }

        #[test]
        fn defect_zero_members_reduce_to_dominant_defect_zero((l, c) in weight_and_content()) {
            if l.defect(&c) == 0 && in_p(&l, &c).unwrap() {
                let d = dominant_rep(&l, &c).unwrap();
                prop_assert_eq!(l.defect(&d.content), 0);
                prop_assert!(l.hub(&d.content).is_dominant());
            }
        }

        #[test]
        fn hub_to_lattice_round_trip(a in proptest::collection::vec(0i64..4, 2..6), seed in proptest::collection::vec(-6i64..6, 5)) {
            prop_assume!(a.iter().sum::<i64>() > 0);
            let l = HighestWeight::new(a).unwrap();
            let m = LatticePoint(seed[..l.e() - 1].to_vec());
            let hub = lattice_hub(&l, &m);
            prop_assert_eq!(hub_to_lattice(&l, &hub).unwrap(), Some(m));
        }
    }
}
