//! Invariant suites run over a matrix of highest weights.
//!
//! Each suite records how many individual checks it ran, how many it had to
//! skip (a cap too low to certify), and every failure as a JSON witness.

use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds_general::{compositions, region_points, sharp_n, shell_leaks, verify_n};
use crate::crystal_graph::{check_external_criterion, CrystalGraph};
use crate::e2_closed_form::{E2Context, SVariant};
use crate::error::Result;
use crate::membership::{in_p, s_of_m, LatticePoint};
use crate::root_system::{Content, HighestWeight};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckMatrix {
    pub es: Vec<usize>,
    pub max_level: i64,
    pub max_degree: i64,
    pub max_defect: i64,
    /// Closed-form `s` is compared on `|m| ≤ m_radius`.
    pub m_radius: i64,
    pub s_variant: SVariant,
}

impl Default for CheckMatrix {
    fn default() -> Self {
        CheckMatrix {
            es: vec![2, 3],
            max_level: 3,
            max_degree: 20,
            max_defect: 6,
            m_radius: 20,
            s_variant: SVariant::Corrected,
        }
    }
}

impl CheckMatrix {
    pub fn empty() -> Self {
        CheckMatrix {
            es: Vec::new(),
            ..CheckMatrix::default()
        }
    }

    /// All dominant weights of level `1..=max_level` for each `e`.
    pub fn weights(&self) -> Vec<HighestWeight> {
        self.es
            .iter()
            .flat_map(|&e| (1..=self.max_level).flat_map(move |level| dominant_weights(e, level)))
            .collect()
    }
}

/// Every `(a_0, …, a_{e-1})` with nonnegative entries summing to `level`, in
/// lexicographic order.
pub fn dominant_weights(e: usize, level: i64) -> Vec<HighestWeight> {
    if e < 2 {
        return Vec::new();
    }
    compositions(level, e)
        .into_iter()
        .filter_map(|a| HighestWeight::new(a).ok())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: usize,
    pub skipped: usize,
    pub failures: Vec<Value>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn new(name: &'static str) -> Self {
        SuiteReport {
            name,
            checks: 0,
            skipped: 0,
            failures: Vec::new(),
            passed: true,
        }
    }

    fn fail(&mut self, witness: Value) {
        self.failures.push(witness);
        self.passed = false;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub matrix: CheckMatrix,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

/// String profiles: along every `i`-string starting in the graph, with top
/// `t` and `w = θ_i(t)`, the string has `w + 1` elements and the `k`-th has
/// defect `defect(t) + k(w - k)`. The string through `Λ` itself has profile
/// `k(a_i - k)`.
pub fn string_profiles(graph: &CrystalGraph, suite: &mut SuiteReport) -> Result<()> {
    let lambda = graph.lambda();
    let weight = lambda.coefficients();
    for i in 0..lambda.e() {
        let a_i = weight[i];
        let from_top = graph.i_string(&Content::zero(lambda.e()), i)?;
        suite.checks += 1;
        let profile: Vec<i64> = from_top.iter().map(|c| lambda.defect(c)).collect();
        let expected: Vec<i64> = (0..=a_i).map(|k| k * (a_i - k)).collect();
        if profile != expected {
            suite.fail(json!({
                "weight": weight, "residue": i, "top": from_top[0],
                "profile": profile, "expected": expected,
            }));
        }
    }
    for (c, v) in graph.vertices() {
        for i in 0..lambda.e() {
            if graph.contains(&c.shifted(i, -1)) {
                continue;
            }
            suite.checks += 1;
            let string = graph.i_string(c, i)?;
            let w = v.hub[i];
            let profile: Vec<i64> = string.iter().map(|s| lambda.defect(s)).collect();
            let expected: Vec<i64> = if w < 0 {
                Vec::new()
            } else {
                (0..=w).map(|k| v.defect + k * (w - k)).collect()
            };
            if string[0] != *c || profile != expected {
                suite.fail(json!({
                    "weight": weight, "residue": i, "top": c, "theta": w,
                    "profile": profile, "expected": expected,
                }));
            }
        }
    }
    Ok(())
}

pub fn external_criterion(graph: &CrystalGraph, suite: &mut SuiteReport) -> Result<()> {
    suite.checks += graph.vertex_count() * graph.lambda().e();
    for v in check_external_criterion(graph)? {
        suite.fail(json!({ "weight": graph.lambda().coefficients(), "violation": v }));
    }
    Ok(())
}

/// Closed-form `s`, defect and hub against the membership oracle on
/// `|m| ≤ radius`.
pub fn closed_form(lambda: &HighestWeight, radius: i64, variant: SVariant, suite: &mut SuiteReport) -> Result<()> {
    let ctx = E2Context::from_weight(lambda)?;
    for m in -radius..=radius {
        suite.checks += 1;
        let oracle = s_of_m(lambda, &LatticePoint(vec![m]))?;
        let closed = ctx.invariants_with(m, variant);
        let q_u = ctx.decompose(m);
        if closed.content != oracle.content
            || closed.defect != lambda.defect(&oracle.content)
            || closed.hub != lambda.hub(&oracle.content)
        {
            suite.fail(json!({
                "a0": lambda.coefficients()[0], "a1": lambda.coefficients()[1], "m": m,
                "q": q_u.q, "u": q_u.u, "variant": variant,
                "claimed_s": closed.content[0], "oracle_s": oracle.s,
                "claimed_content": closed.content, "oracle_content": oracle.content,
            }));
        }
    }
    Ok(())
}

/// No lattice point on the bounding-box shell lies inside the open region,
/// and every region point is a member with the advertised defect bound.
pub fn region_soundness(lambda: &HighestWeight, d: i64, suite: &mut SuiteReport) -> Result<()> {
    let report = region_points(lambda, d)?;
    suite.checks += 1;
    let leaks = shell_leaks(lambda, &report);
    if !leaks.is_empty() {
        suite.fail(json!({ "weight": lambda.coefficients(), "d": d, "shell_leaks": leaks }));
    }
    for p in report.points.iter().chain(&report.boundary) {
        suite.checks += 1;
        if !in_p(lambda, &p.max_weight.content)? || p.hub != lambda.hub(&p.max_weight.content) {
            suite.fail(json!({ "weight": lambda.coefficients(), "d": d, "point": p }));
        }
    }
    Ok(())
}

/// `sharp_n` against brute force on `graph`; skipped when the graph is too
/// shallow to exhibit the sharpness witness.
pub fn sharp_agreement(graph: &CrystalGraph, d: i64, suite: &mut SuiteReport) -> Result<()> {
    let bound = sharp_n(graph.lambda(), d)?;
    if bound.n - 1 > graph.max_degree() {
        suite.skipped += 1;
        return Ok(());
    }
    suite.checks += 1;
    let report = verify_n(graph, d, bound.n)?;
    if !report.passed {
        suite.fail(json!({ "weight": graph.lambda().coefficients(), "sharp": bound, "verify": report }));
    }
    Ok(())
}

pub fn run_checks(matrix: &CheckMatrix) -> Result<CheckReport> {
    let mut profiles = SuiteReport::new("string_profiles");
    let mut criterion = SuiteReport::new("external_criterion");
    let mut closed = SuiteReport::new("closed_form");
    let mut region = SuiteReport::new("region_soundness");
    let mut agreement = SuiteReport::new("sharp_agreement");

    for lambda in matrix.weights() {
        let graph = CrystalGraph::enumerate(&lambda, matrix.max_degree)?;
        string_profiles(&graph, &mut profiles)?;
        external_criterion(&graph, &mut criterion)?;
        if lambda.e() == 2 {
            closed_form(&lambda, matrix.m_radius, matrix.s_variant, &mut closed)?;
        }
        for d in 0..=matrix.max_defect {
            if d > 0 {
                region_soundness(&lambda, d, &mut region)?;
            }
            sharp_agreement(&graph, d, &mut agreement)?;
        }
    }

    let suites = vec![profiles, criterion, closed, region, agreement];
    let passed = suites.iter().all(|s| s.passed);
    Ok(CheckReport {
        matrix: matrix.clone(),
        suites,
        passed,
    })
}
