//! Degree bounds past which every weight of a fixed defect reduces.
//!
//! A weight of defect `d ≥ 1` with some hub component `θ_i ≤ -d` is
//! `i`-external at the high-degree end of its `i`-string and reflects to a
//! lower degree. The lattice points `m` with no component `≤ -d` lie in the
//! simplex `{x : θ_i(x) ≥ -d}`, which is bounded; the defect-`d` weights over
//! those points are the only ones that fail to reduce, and the largest of their
//! degrees gives the sharp bound.

use num_rational::Rational64;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg;
use crate::membership::{hub_to_lattice, lattice_hub, s_of_m, LatticePoint, MaxWeight};
use crate::root_system::{Content, HighestWeight, Hub};
use crate::CrystalGraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegionPoint {
    pub m: LatticePoint,
    pub max_weight: MaxWeight,
    pub hub: Hub,
    pub defect: i64,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegionReport {
    pub d: i64,
    /// Lattice points with every hub component `> -d`.
    pub points: Vec<RegionPoint>,
    /// Lattice points whose smallest hub component is exactly `-d`.
    pub boundary: Vec<RegionPoint>,
    #[serde(serialize_with = "serialize_corners")]
    pub simplex_corners: Vec<Vec<Rational64>>,
    /// Inclusive `(lo, hi)` per lattice coordinate.
    pub bounding_box: Vec<(i64, i64)>,
}

fn serialize_corners<S: Serializer>(corners: &[Vec<Rational64>], s: S) -> Result<S::Ok, S::Error> {
    let text: Vec<Vec<String>> = corners
        .iter()
        .map(|v| v.iter().map(|q| q.to_string()).collect())
        .collect();
    text.serialize(s)
}

/// Corners of `{x ∈ R^ℓ : θ_j(x) ≥ -d}`: corner `k` makes every constraint
/// except `θ_k` tight.
pub fn simplex_corners(lambda: &HighestWeight, d: i64) -> Result<Vec<Vec<Rational64>>> {
    let rank = lambda.rank();
    let e = rank.e();
    let a = lambda.coefficients();
    // θ_j(x) = a_j - Σ_{k≥1} C_jk x_k, so θ_j = -d reads Σ C_jk x_k = a_j + d.
    (0..e)
        .map(|skip| {
            let rows: Vec<usize> = (0..e).filter(|&j| j != skip).collect();
            let matrix: Vec<Vec<i64>> = rows
                .iter()
                .map(|&j| (1..e).map(|k| rank.entry(j, k)).collect())
                .collect();
            let rhs: Vec<i64> = rows.iter().map(|&j| a[j] + d).collect();
            linalg::solve(&matrix, &rhs).ok_or(Error::DegenerateSimplex)
        })
        .collect()
}

fn bounding_box(corners: &[Vec<Rational64>]) -> Vec<(i64, i64)> {
    let ell = corners[0].len();
    (0..ell)
        .map(|k| {
            let lo = corners.iter().map(|v| v[k].floor().to_integer()).min().unwrap();
            let hi = corners.iter().map(|v| v[k].ceil().to_integer()).max().unwrap();
            (lo, hi)
        })
        .collect()
}

/// Lattice points of an inclusive box, lexicographic.
pub fn box_points(bbox: &[(i64, i64)]) -> Vec<LatticePoint> {
    let mut out = vec![Vec::new()];
    for &(lo, hi) in bbox {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (lo..=hi).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(LatticePoint).collect()
}

pub fn region_points(lambda: &HighestWeight, d: i64) -> Result<RegionReport> {
    let corners = simplex_corners(lambda, d)?;
    let bbox = bounding_box(&corners);
    let candidates: Vec<(LatticePoint, Hub)> = box_points(&bbox)
        .into_iter()
        .map(|m| {
            let hub = lattice_hub(lambda, &m);
            (m, hub)
        })
        .filter(|(_, hub)| hub.min_component() >= -d)
        .collect();
    let resolved = candidates
        .into_par_iter()
        .map(|(m, hub)| {
            let w = s_of_m(lambda, &m)?;
            Ok(RegionPoint {
                defect: lambda.defect(&w.content),
                degree: w.content.degree(),
                m,
                max_weight: w,
                hub,
            })
        })
        .collect::<Result<Vec<RegionPoint>>>()?;
    let (points, boundary) = resolved.into_iter().partition(|p| p.hub.min_component() > -d);
    Ok(RegionReport {
        d,
        points,
        boundary,
        simplex_corners: corners,
        bounding_box: bbox,
    })
}

/// Lattice points on the faces of the bounding box that do NOT have a hub
/// component `≤ -d`. Empty whenever the box encloses the region.
pub fn shell_leaks(lambda: &HighestWeight, report: &RegionReport) -> Vec<LatticePoint> {
    let bbox = &report.bounding_box;
    box_points(bbox)
        .into_iter()
        .filter(|m| m.0.iter().zip(bbox).any(|(x, (lo, hi))| x == lo || x == hi))
        .filter(|m| lattice_hub(lambda, m).min_component() > -report.d)
        .collect()
}

/// Nonnegative integer vectors of length `parts` summing to `total`, in
/// lexicographic order.
pub fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    fn rec(prefix: &mut Vec<i64>, left: i64, slots: usize, out: &mut Vec<Vec<i64>>) {
        if slots == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in 0..=left {
            prefix.push(a);
            rec(prefix, left - a, slots - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 && total >= 0 {
        rec(&mut Vec::new(), total, parts, &mut out);
    }
    out
}

/// Whether some weight of `P(Λ)` has defect `d`.
///
/// Every weight is conjugate to a dominant one of the same defect, and the
/// dominant weights are `η_m - kδ` for the finitely many `m` with a dominant
/// hub, of defect `defect(η_m) + k·r`.
pub fn defect_realizable(lambda: &HighestWeight, d: i64) -> Result<bool> {
    let r = lambda.level();
    for theta in compositions(r, lambda.e()) {
        let Some(m) = hub_to_lattice(lambda, &Hub(theta))? else {
            continue;
        };
        let base = lambda.defect(&s_of_m(lambda, &m)?.content);
        if d >= base && (d - base) % r == 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Which weights count as reducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Reducibility {
    /// Some hub component is `≤ -d`.
    #[default]
    NegativeComponent,
    /// Every hub component has absolute value `≥ d` (external on both
    /// sides). Only meaningful for `e = 2`, where the failing set stays finite.
    BothSides,
}

impl std::str::FromStr for Reducibility {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "negative" => Ok(Reducibility::NegativeComponent),
            "both-sides" => Ok(Reducibility::BothSides),
            other => Err(format!("unknown criterion `{other}` (negative, both-sides)")),
        }
    }
}

impl Reducibility {
    fn reducible(self, hub: &Hub, d: i64) -> bool {
        match self {
            Reducibility::NegativeComponent => hub.min_component() <= -d,
            Reducibility::BothSides => hub.0.iter().all(|t| t.abs() >= d),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailingWeight {
    pub m: LatticePoint,
    pub content: Content,
    pub hub: Hub,
    pub defect: i64,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SharpBound {
    pub d: i64,
    pub n: i64,
    /// Every defect-`d` weight that does not reduce, lexicographic in `m`.
    pub failing: Vec<FailingWeight>,
    /// The failing weight of largest degree (degree `n - 1`).
    pub witness: Option<FailingWeight>,
}

pub fn sharp_n(lambda: &HighestWeight, d: i64) -> Result<SharpBound> {
    sharp_n_with(lambda, d, Reducibility::NegativeComponent)
}

/// `N(d)`: one more than the largest degree of a defect-`d` weight that does
/// not reduce, `0` when there is none. `N(0) = 0` by convention.
pub fn sharp_n_with(lambda: &HighestWeight, d: i64, mode: Reducibility) -> Result<SharpBound> {
    if d <= 0 {
        return Ok(SharpBound {
            d,
            n: 0,
            failing: Vec::new(),
            witness: None,
        });
    }
    if mode == Reducibility::BothSides && lambda.e() != 2 {
        return Err(Error::Unsupported("the both-sides criterion is only finite for e = 2"));
    }
    let region = region_points(lambda, d)?;
    let r = lambda.level();
    let e = lambda.e() as i64;
    // Outside the closed region some component is < -d; for e = 2 the other
    // one then exceeds d + r, so both modes agree there.
    let failing: Vec<FailingWeight> = region
        .points
        .iter()
        .chain(&region.boundary)
        .filter(|p| !mode.reducible(&p.hub, d))
        .filter_map(|p| {
            let gap = d - p.defect;
            (gap >= 0 && gap % r == 0).then(|| {
                let k = gap / r;
                FailingWeight {
                    m: p.m.clone(),
                    content: p.max_weight.content.add_delta(k),
                    hub: p.hub.clone(),
                    defect: d,
                    degree: p.degree + k * e,
                }
            })
        })
        .collect::<Vec<_>>();
    let mut failing = failing;
    failing.sort_by(|x, y| x.m.cmp(&y.m));
    let witness = failing
        .iter()
        .fold(None::<&FailingWeight>, |best, w| match best {
            Some(b) if b.degree >= w.degree => Some(b),
            _ => Some(w),
        })
        .cloned();
    let n = witness.as_ref().map_or(0, |w| w.degree + 1);
    Ok(SharpBound { d, n, failing, witness })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphWitness {
    pub content: Content,
    pub hub: Hub,
    pub defect: i64,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub d: i64,
    pub n: i64,
    pub max_degree: i64,
    /// Defect-`d` vertices scanned.
    pub checked: usize,
    /// Defect-`d` vertices of degree `≥ n` with no component `≤ -d`.
    pub violations: Vec<GraphWitness>,
    /// A non-reducing defect-`d` vertex of degree `n - 1`.
    pub sharpness_witness: Option<GraphWitness>,
    pub passed: bool,
}

/// Brute-force check of a claimed sharp bound against an enumerated graph.
pub fn verify_n(graph: &CrystalGraph, d: i64, n: i64) -> Result<VerifyReport> {
    if d == 0 && n == 0 {
        return Ok(VerifyReport {
            d,
            n,
            max_degree: graph.max_degree(),
            checked: 0,
            violations: Vec::new(),
            sharpness_witness: None,
            passed: true,
        });
    }
    // Sharpness needs degree n - 1 in view.
    if graph.max_degree() < n - 1 {
        return Err(Error::CapTooLow {
            needed: n - 1,
            have: graph.max_degree(),
        });
    }
    let mut checked = 0;
    let mut violations = Vec::new();
    let mut sharpness_witness = None;
    for (c, v) in graph.defect_stratum(d) {
        checked += 1;
        if v.hub.min_component() <= -d {
            continue;
        }
        let record = || GraphWitness {
            content: c.clone(),
            hub: v.hub.clone(),
            defect: v.defect,
            degree: v.degree,
        };
        if v.degree >= n {
            violations.push(record());
        } else if v.degree == n - 1 && sharpness_witness.is_none() {
            sharpness_witness = Some(record());
        }
    }
    let passed = violations.is_empty() && (n == 0 || sharpness_witness.is_some());
    Ok(VerifyReport {
        d,
        n,
        max_degree: graph.max_degree(),
        checked,
        violations,
        sharpness_witness,
        passed,
    })
}
