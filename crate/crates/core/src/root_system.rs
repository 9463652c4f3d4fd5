//! Cartan data for type `A_ℓ^(1)` and the invariant calculus on contents.
//!
//! Conventions used throughout the crate:
//!
//! * residues are `0..e`, with `ℓ = e - 1`;
//! * a weight is `λ = Λ - Σ c_i α_i` and is represented by its content `c`;
//! * the hub is `θ = a - C·c`, where `a` holds the coefficients of `Λ`;
//! * the defect is `a·c - ½ cᵀCc`;
//! * shifting by `-δ` adds one to every content entry.

use std::fmt;
use std::ops::Index;

use serde::Serialize;

use crate::error::{Error, Result};

/// Cartan matrix of the affine algebra with `e` residues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankData {
    e: usize,
    cartan: Vec<i64>,
}

impl RankData {
    pub fn new(e: usize) -> Result<Self> {
        if e < 2 {
            return Err(Error::InvalidRank(e));
        }
        let mut cartan = vec![0; e * e];
        for i in 0..e {
            for j in 0..e {
                cartan[i * e + j] = if i == j {
                    2
                } else if e == 2 {
                    -2
                } else {
                    let diff = (i + e - j) % e;
                    if diff == 1 || diff == e - 1 {
                        -1
                    } else {
                        0
                    }
                };
            }
        }
        Ok(RankData { e, cartan })
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn ell(&self) -> usize {
        self.e - 1
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.cartan[i * self.e + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.cartan.chunks(self.e).map(<[i64]>::to_vec).collect()
    }

    /// `C·x`.
    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.e, "vector length does not match rank");
        self.cartan
            .chunks(self.e)
            .map(|row| row.iter().zip(x).map(|(c, v)| c * v).sum())
            .collect()
    }

    /// `xᵀ C x`; always even.
    pub fn quadratic_form(&self, x: &[i64]) -> i64 {
        self.apply(x).iter().zip(x).map(|(cx, v)| cx * v).sum()
    }
}

macro_rules! int_vector {
    ($(#[$meta:meta])* $name:ident, $open:literal, $close:literal) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
        #[serde(transparent)]
        pub struct $name(pub Vec<i64>);

        impl $name {
            pub fn as_slice(&self) -> &[i64] {
                &self.0
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }
        }

        impl Index<usize> for $name {
            type Output = i64;

            fn index(&self, i: usize) -> &i64 {
                &self.0[i]
            }
        }

        impl From<Vec<i64>> for $name {
            fn from(v: Vec<i64>) -> Self {
                $name(v)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str($open)?;
                for (k, v) in self.0.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str($close)
            }
        }
    };
}

int_vector!(
    /// Coefficients `c_i` of `α_i` in `Λ - λ`. Entries may be negative while a
    /// Weyl computation is in flight; members of `P(Λ)` have `c ≥ 0`.
    Content,
    "(",
    ")"
);

int_vector!(
    /// Pairings `θ_i = ⟨λ, h_i⟩`.
    Hub,
    "[",
    "]"
);

impl Content {
    pub fn zero(e: usize) -> Self {
        Content(vec![0; e])
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `λ ↦ λ - kδ`.
    pub fn add_delta(&self, k: i64) -> Content {
        Content(self.0.iter().map(|c| c + k).collect())
    }

    /// Content with entry `i` moved by `by`.
    pub fn shifted(&self, i: usize, by: i64) -> Content {
        let mut c = self.0.clone();
        c[i] += by;
        Content(c)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }
}

impl Hub {
    pub fn level(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn min_component(&self) -> i64 {
        self.0.iter().copied().min().unwrap_or(0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&t| t >= 0)
    }
}

/// A dominant integral weight `Λ = Σ a_i Λ_i` of positive level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HighestWeight {
    rank: RankData,
    a: Vec<i64>,
}

impl HighestWeight {
    pub fn new(a: Vec<i64>) -> Result<Self> {
        let rank = RankData::new(a.len())?;
        if a.iter().any(|&x| x < 0) {
            return Err(Error::InvalidWeight {
                coefficients: a,
                reason: "coefficients must be non-negative",
            });
        }
        if a.iter().sum::<i64>() < 1 {
            return Err(Error::InvalidWeight {
                coefficients: a,
                reason: "level must be positive",
            });
        }
        Ok(HighestWeight { rank, a })
    }

    /// `Λ_i` with coefficient one.
    pub fn fundamental(e: usize, i: usize) -> Result<Self> {
        let mut a = vec![0; e];
        if i < e {
            a[i] = 1;
        }
        HighestWeight::new(a)
    }

    pub fn rank(&self) -> &RankData {
        &self.rank
    }

    pub fn e(&self) -> usize {
        self.rank.e
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.a
    }

    pub fn level(&self) -> i64 {
        self.a.iter().sum()
    }

    pub fn hub(&self, c: &Content) -> Hub {
        let cc = self.rank.apply(&c.0);
        Hub(self.a.iter().zip(cc).map(|(a, x)| a - x).collect())
    }

    pub fn defect(&self, c: &Content) -> i64 {
        assert_eq!(c.len(), self.e(), "content length does not match rank");
        let linear: i64 = self.a.iter().zip(&c.0).map(|(a, x)| a * x).sum();
        let quad = self.rank.quadratic_form(&c.0);
        debug_assert_eq!(quad % 2, 0);
        linear - quad / 2
    }

    /// Simple reflection `s_i(λ) = λ - θ_i α_i`.
    pub fn reflect(&self, c: &Content, i: usize) -> Content {
        let theta_i = self.hub(c)[i];
        c.shifted(i, theta_i)
    }

    /// Translation `t_α` for `α = Σ_{i≥1} k_i α_i`:
    /// `t_α(ζ) = ζ + rα - ((ζ|α) + ½(α|α) r) δ`.
    pub fn translate(&self, c: &Content, k: &[i64]) -> Content {
        let e = self.e();
        assert_eq!(k.len(), e - 1, "translation vector must have length e - 1");
        let mut alpha = Vec::with_capacity(e);
        alpha.push(0);
        alpha.extend_from_slice(k);

        let hub = self.hub(c);
        let pairing: i64 = hub.0.iter().zip(&alpha).map(|(t, x)| t * x).sum();
        let norm = self.rank.quadratic_form(&alpha);
        let r = self.level();
        let delta_coeff = pairing + norm / 2 * r;

        Content(
            c.0.iter()
                .zip(&alpha)
                .map(|(ci, ai)| ci - r * ai + delta_coeff)
                .collect(),
        )
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &a) in self.a.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            if a == 1 {
                write!(f, "L{i}")?;
            } else {
                write!(f, "{a}L{i}")?;
            }
        }
        Ok(())
    }
}
