//! Clebsch-Gordan coefficients in the Condon-Shortley convention, evaluated
//! exactly with the Racah sum and rounded once at the end.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use super::{check_projection, HalfInteger, SpinSystem};
use crate::error::{Error, Result};

fn factorial(n: i32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `⟨j1 m1; j2 m2 | j m⟩`.
///
/// Returns 0 when `m ≠ m1 + m2` or the triangle rule fails; invalid
/// projections are a domain error.
pub fn clebsch_gordan(
    j1: HalfInteger,
    j2: HalfInteger,
    m1: HalfInteger,
    m2: HalfInteger,
    j: HalfInteger,
    m: HalfInteger,
) -> Result<f64> {
    for (label, x) in [("j1", j1), ("j2", j2), ("j", j)] {
        if x.twice() < 0 {
            return Err(Error::domain(format!("{label} must be non-negative, got {x}")));
        }
    }
    check_projection(j1, m1)?;
    check_projection(j2, m2)?;
    check_projection(j, m)?;
    if m1 + m2 != m {
        return Ok(0.0);
    }
    let (a, b, c) = (j1.twice(), j2.twice(), j.twice());
    if c < (a - b).abs() || c > a + b || (a + b + c) % 2 != 0 {
        return Ok(0.0);
    }
    Ok(racah(a, b, c, m1.twice(), m2.twice()))
}

/// Arguments are doubled quantum numbers.
fn racah(a: i32, b: i32, c: i32, am: i32, bm: i32) -> f64 {
    let cm = am + bm;
    // all combinations below are even, so the halves are integers
    let half = |x: i32| x / 2;
    let prefactor = BigRational::new(
        BigInt::from(c + 1)
            * factorial(half(c + a - b))
            * factorial(half(c - a + b))
            * factorial(half(a + b - c))
            * factorial(half(c + cm))
            * factorial(half(c - cm))
            * factorial(half(a - am))
            * factorial(half(a + am))
            * factorial(half(b - bm))
            * factorial(half(b + bm)),
        factorial(half(a + b + c) + 1),
    );

    let k_min = 0.max(half(b - c - am)).max(half(a - c + bm));
    let k_max = half(a + b - c).min(half(a - am)).min(half(b + bm));
    let mut sum = BigRational::zero();
    for k in k_min..=k_max {
        let den = factorial(k)
            * factorial(half(a + b - c) - k)
            * factorial(half(a - am) - k)
            * factorial(half(b + bm) - k)
            * factorial(half(c - b + am) + k)
            * factorial(half(c - a - bm) + k);
        let term = BigRational::new(BigInt::one(), den);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if sum.is_zero() {
        return 0.0;
    }
    let squared = prefactor * &sum * &sum;
    let magnitude = squared.to_f64().unwrap_or(f64::NAN).sqrt();
    if sum.is_negative() {
        -magnitude
    } else {
        magnitude
    }
}

/// Coefficients `⟨S m_S; I m_I | F m⟩` of one spin system, indexed by
/// `(F, m, m_S)`.
#[derive(Debug, Clone)]
pub struct CouplingTable {
    s: HalfInteger,
    i: HalfInteger,
    coefficients: HashMap<(i32, i32, i32), f64>,
}

impl CouplingTable {
    pub fn new(system: &SpinSystem) -> Self {
        let (s, i) = (system.s(), system.i());
        let mut coefficients = HashMap::new();
        for f in system.f_values() {
            for m in f.projections() {
                for ms in s.projections() {
                    let mi = m - ms;
                    if mi.twice().abs() > i.twice() {
                        continue;
                    }
                    let c = clebsch_gordan(s, i, ms, mi, f, m).expect("valid projections");
                    if c != 0.0 {
                        coefficients.insert((f.twice(), m.twice(), ms.twice()), c);
                    }
                }
            }
        }
        Self { s, i, coefficients }
    }

    /// Process-wide memoised table for `(S, I)`; safe for concurrent use.
    pub fn shared(system: &SpinSystem) -> Arc<Self> {
        type Cache = RwLock<HashMap<(i32, i32), Arc<CouplingTable>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let key = (system.s().twice(), system.i().twice());
        if let Some(t) = cache.read().expect("cache lock").get(&key) {
            return Arc::clone(t);
        }
        let table = Arc::new(Self::new(system));
        cache.write().expect("cache lock").entry(key).or_insert(table).clone()
    }

    /// Electron spin `S`.
    pub fn s(&self) -> HalfInteger {
        self.s
    }

    /// Nuclear spin `I`.
    pub fn i(&self) -> HalfInteger {
        self.i
    }

    /// `⟨S m_S; I (m − m_S) | F m⟩`, zero outside the table.
    pub fn get(&self, f: HalfInteger, m: HalfInteger, ms: HalfInteger) -> f64 {
        self.coefficients
            .get(&(f.twice(), m.twice(), ms.twice()))
            .copied()
            .unwrap_or(0.0)
    }
}
