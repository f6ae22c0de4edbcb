//! Singularity census of the regenerated branch curve and the Chern numbers
//! and topological index of the Galois cover.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::degeneration::{Degeneration, DegenerationError, VertexKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantsError {
    #[error("{quantity} is not an integer: {value}")]
    NotIntegral {
        quantity: &'static str,
        value: String,
    },
    #[error(transparent)]
    Degeneration(#[from] DegenerationError),
}

/// Degree `m` of the branch curve, degree `N` of the projection, nodes `p`
/// and cusps `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SingularityCensus {
    pub n: u32,
    pub m: u64,
    #[serde(rename = "N")]
    pub big_n: u64,
    pub p: u64,
    pub q: u64,
}

/// Per-vertex sums: a Zappatic vertex on `k` lines gives `3(k-2)` cusps and
/// `(k-3)(2k-4)` nodes, a four-line vertex 12 cusps and 4 nodes, and each
/// pair of disjoint lines 4 nodes. Every line doubles in `S`.
pub fn singularity_census(d: &Degeneration) -> Result<SingularityCensus, InvariantsError> {
    d.validate()?;
    let (mut p, mut q) = (0u64, 0u64);
    for v in &d.vertices {
        match v.kind {
            VertexKind::Zappatic(k) => {
                let k = k as u64;
                q += 3 * (k - 2);
                p += (k - 3) * (2 * k - 4);
            }
            VertexKind::FourLine => {
                q += 12;
                p += 4;
            }
            VertexKind::ConicEndpoint => {}
        }
    }
    p += 4 * d.disjoint_line_pairs().len() as u64;
    Ok(SingularityCensus {
        n: d.n,
        m: 2 * d.line_count() as u64,
        big_n: d.planes.len() as u64,
        p,
        q,
    })
}

/// `m = 6n+2`, `N = 2n+2`, `p = 18n^2-22n+8`, `q = 18n-6`.
pub fn closed_form_census(n: u32) -> SingularityCensus {
    let n64 = n as u64;
    SingularityCensus {
        n,
        m: 6 * n64 + 2,
        big_n: 2 * n64 + 2,
        p: 18 * n64 * n64 + 8 - 22 * n64,
        q: 18 * n64 - 6,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChernReport {
    #[serde(serialize_with = "decimal")]
    pub c1_sq: BigInt,
    #[serde(serialize_with = "decimal")]
    pub c2: BigInt,
    #[serde(serialize_with = "decimal")]
    pub tau: BigInt,
    pub general_type: bool,
}

fn decimal<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

fn integral(quantity: &'static str, r: BigRational) -> Result<BigInt, InvariantsError> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(InvariantsError::NotIntegral {
            quantity,
            value: r.to_string(),
        })
    }
}

/// `C_1^2 = N!/4 (m-6)^2`, `C_2 = N! (m^2/2 - 3m/2 + 3 - 3p/4 - 4q/3)`,
/// `tau = (C_1^2 - 2 C_2)/3`, all exact.
pub fn chern(c: &SingularityCensus) -> Result<ChernReport, InvariantsError> {
    let nf = BigRational::from_integer(factorial(c.big_n));
    let r = |v: i64| BigRational::from_integer(BigInt::from(v));
    let frac = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    let m = r(c.m as i64);
    let p = r(c.p as i64);
    let q = r(c.q as i64);

    let m6 = &m - r(6);
    let c1_sq = integral("C1^2", &nf * frac(1, 4) * &m6 * &m6)?;
    let inner = frac(1, 2) * &m * &m - frac(3, 2) * &m + r(3) - frac(3, 4) * p - frac(4, 3) * q;
    let c2 = integral("C2", &nf * inner)?;
    let tau = integral(
        "tau",
        BigRational::new(&c1_sq - BigInt::from(2) * &c2, BigInt::from(3)),
    )?;
    Ok(ChernReport {
        general_type: c1_sq.is_positive(),
        c1_sq,
        c2,
        tau,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantsReport {
    pub n: u32,
    pub m: u64,
    #[serde(rename = "N")]
    pub big_n: u64,
    pub p: u64,
    pub q: u64,
    #[serde(serialize_with = "decimal")]
    pub c1_sq: BigInt,
    #[serde(serialize_with = "decimal")]
    pub c2: BigInt,
    #[serde(serialize_with = "decimal")]
    pub tau: BigInt,
    pub general_type: bool,
    pub tau_negative: bool,
}

impl InvariantsReport {
    pub fn new(c: &SingularityCensus, r: &ChernReport) -> Self {
        InvariantsReport {
            n: c.n,
            m: c.m,
            big_n: c.big_n,
            p: c.p,
            q: c.q,
            c1_sq: r.c1_sq.clone(),
            c2: r.c2.clone(),
            tau: r.tau.clone(),
            general_type: r.general_type,
            tau_negative: r.tau.is_negative(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}
