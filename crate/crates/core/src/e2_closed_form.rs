//! Closed forms for two residues, `Λ = a_0 Λ_0 + a_1 Λ_1`.
//!
//! Every integer is written `m = q r + u` with `-b_0 ≤ u ≤ r - b_0 - 1`,
//! `b_0 = ⌊a_0/2⌋`. The maximal weight over `m` has hub `[a_0+2m, a_1-2m]`,
//! content `(s, s+m)` and
//!
//! ```text
//! s(m) = max(-u, 0, u - a_1) - q(a_1 - 2u) + q² r
//! ```
//!
//! This follows from `η_{qr+u} = t_{-qα_1}(η_u)`. A variant with `+q(a_1-2u)`
//! is kept as [`SVariant::Printed`] for discrepancy reports; it disagrees with
//! the membership oracle whenever `q(a_1 - 2u) ≠ 0`.

use serde::Serialize;

use crate::bounds_general::sharp_n;
use crate::error::{Error, Result};
use crate::membership::{s_of_m, LatticePoint, MaxRow};
use crate::root_system::{Content, HighestWeight, Hub};
use crate::CrystalGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct E2Context {
    pub a0: i64,
    pub a1: i64,
    pub r: i64,
    pub b0: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuDecomposition {
    pub m: i64,
    pub q: i64,
    pub u: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SVariant {
    #[default]
    Corrected,
    Printed,
}

impl std::str::FromStr for SVariant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "corrected" => Ok(SVariant::Corrected),
            "printed" => Ok(SVariant::Printed),
            other => Err(format!("unknown s-variant `{other}` (corrected, printed)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedInvariants {
    pub hub: Hub,
    pub defect: i64,
    pub content: Content,
    pub degree: i64,
}

impl E2Context {
    pub fn new(a0: i64, a1: i64) -> Result<Self> {
        if a0 < 0 || a1 < 0 || a0 + a1 < 1 {
            return Err(Error::InvalidWeight {
                coefficients: vec![a0, a1],
                reason: "need a0, a1 >= 0 and positive level",
            });
        }
        Ok(E2Context {
            a0,
            a1,
            r: a0 + a1,
            b0: a0 / 2,
        })
    }

    pub fn from_weight(lambda: &HighestWeight) -> Result<Self> {
        match *lambda.coefficients() {
            [a0, a1] => E2Context::new(a0, a1),
            _ => Err(Error::Unsupported("closed forms need e = 2")),
        }
    }

    pub fn highest_weight(&self) -> HighestWeight {
        HighestWeight::new(vec![self.a0, self.a1]).expect("context is validated")
    }

    pub fn decompose(&self, m: i64) -> QuDecomposition {
        let q = (m + self.b0).div_euclid(self.r);
        QuDecomposition {
            m,
            q,
            u: m - q * self.r,
        }
    }

    pub fn s_closed(&self, m: i64, variant: SVariant) -> i64 {
        let QuDecomposition { q, u, .. } = self.decompose(m);
        let base = (-u).max(0).max(u - self.a1);
        let linear = q * (self.a1 - 2 * u);
        let quadratic = q * q * self.r;
        match variant {
            SVariant::Corrected => base - linear + quadratic,
            SVariant::Printed => base + linear + quadratic,
        }
    }

    pub fn defect_closed(&self, m: i64) -> i64 {
        let u = self.decompose(m).u;
        let (a0, a1, r) = (self.a0, self.a1, self.r);
        (-u * (a0 + u)).max(u * (a1 - u)).max((u - a1) * (r - u))
    }

    pub fn invariants_closed(&self, m: i64) -> ClosedInvariants {
        self.invariants_with(m, SVariant::Corrected)
    }

    pub fn invariants_with(&self, m: i64, variant: SVariant) -> ClosedInvariants {
        let s = self.s_closed(m, variant);
        ClosedInvariants {
            hub: Hub(vec![self.a0 + 2 * m, self.a1 - 2 * m]),
            defect: self.defect_closed(m),
            content: Content(vec![s, s + m]),
            degree: 2 * s + m,
        }
    }

    /// Rows of `max(Λ)` for `m_lo ≤ m ≤ m_hi` from the closed forms.
    pub fn enumerate_max(&self, m_lo: i64, m_hi: i64, variant: SVariant) -> Vec<MaxRow> {
        (m_lo..=m_hi)
            .map(|m| {
                let inv = self.invariants_with(m, variant);
                MaxRow {
                    m: LatticePoint(vec![m]),
                    hub: inv.hub,
                    defect: inv.defect,
                    content: inv.content,
                    degree: inv.degree,
                }
            })
            .collect()
    }

    /// `(q, N′)` with `q = ⌈(d + max(a_0, a_1)) / 2r⌉` and
    /// `N′ = 2 r q² + q (r + a_1)`.
    pub fn n_prime(&self, d: i64) -> (i64, i64) {
        let num = d + self.a0.max(self.a1);
        let den = 2 * self.r;
        let q = (num + den - 1).div_euclid(den);
        (q, 2 * self.r * q * q + q * (self.r + self.a1))
    }

    pub fn verify_n_prime(&self, d: i64, graph: &CrystalGraph) -> Result<NPrimeReport> {
        let (q, n_prime) = self.n_prime(d);
        if graph.max_degree() < n_prime {
            return Err(Error::CapTooLow {
                needed: n_prime,
                have: graph.max_degree(),
            });
        }
        let sharp = sharp_n(graph.lambda(), d)?.n;
        let mut checked = 0;
        let violations: Vec<Content> = graph
            .defect_stratum(d)
            .filter(|(_, v)| v.degree >= n_prime)
            .inspect(|_| checked += 1)
            .filter(|(_, v)| v.hub.min_component() > -d)
            .map(|(c, _)| c.clone())
            .collect();
        Ok(NPrimeReport {
            d,
            q,
            n_prime,
            sharp_n: sharp,
            checked,
            passed: violations.is_empty() && n_prime >= sharp,
            violations,
        })
    }

    /// Every `m` in range where `variant` disagrees with the membership oracle.
    pub fn s_discrepancies(&self, m_lo: i64, m_hi: i64, variant: SVariant) -> Result<Vec<SDiscrepancy>> {
        let lambda = self.highest_weight();
        let mut out = Vec::new();
        for m in m_lo..=m_hi {
            let claimed = self.s_closed(m, variant);
            let oracle = s_of_m(&lambda, &LatticePoint(vec![m]))?.s;
            if claimed != oracle {
                let QuDecomposition { q, u, .. } = self.decompose(m);
                out.push(SDiscrepancy {
                    a0: self.a0,
                    a1: self.a1,
                    m,
                    q,
                    u,
                    claimed,
                    oracle,
                    claimed_content: Content(vec![claimed, claimed + m]),
                });
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NPrimeReport {
    pub d: i64,
    pub q: i64,
    pub n_prime: i64,
    pub sharp_n: i64,
    pub checked: usize,
    pub violations: Vec<Content>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SDiscrepancy {
    pub a0: i64,
    pub a1: i64,
    pub m: i64,
    pub q: i64,
    pub u: i64,
    pub claimed: i64,
    pub oracle: i64,
    pub claimed_content: Content,
}
