//! Root strings and magnitudes of Chevalley structure constants.
//!
//! Only magnitudes are computed. `|N_{α,β}| = p + 1` where `β - pα` is the
//! bottom of the α-string through β, and the normalized constant is
//! `|Ñ_{α,±β}| = |α||β| / |α±β| · |N_{α,±β}|`.

use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::rootsys::{RootSystem, RootVector, Sign};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChevalleyError {
    #[error("root string undefined: the two roots are equal or opposite")]
    EqualOrOpposite,
    #[error("Ñ(α, -β) needs α ≠ β")]
    EqualRootsForMinus,
}

/// Exact value `q·√r` with `r` square-free.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NtildeMag {
    q: Rational,
    r: i64,
}

impl NtildeMag {
    pub const ZERO: NtildeMag = NtildeMag {
        q: Rational::new_raw(0, 1),
        r: 1,
    };

    /// The nonnegative square root of `square`, written as `q·√r`.
    pub fn from_square(square: Rational) -> NtildeMag {
        assert!(!square.is_negative(), "negative square {square}");
        if square.is_zero() {
            return NtildeMag::ZERO;
        }
        // √(a/b) = √(ab)/b
        let (a, b) = (*square.numer(), *square.denom());
        let (f, r) = split_square(a * b);
        NtildeMag {
            q: Rational::new(f, b),
            r,
        }
    }

    pub fn q(&self) -> Rational {
        self.q
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero()
    }

    pub fn square(&self) -> Rational {
        self.q * self.q * Rational::from_integer(self.r)
    }

    pub fn to_f64(&self) -> f64 {
        (*self.q.numer() as f64 / *self.q.denom() as f64) * (self.r as f64).sqrt()
    }
}

impl fmt::Display for NtildeMag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.r, self.q.is_integer() && *self.q.numer() == 1) {
            (1, _) => write!(f, "{}", self.q),
            (r, true) => write!(f, "√{r}"),
            (r, false) => write!(f, "{}√{r}", self.q),
        }
    }
}

/// `m = f²·r` with `r` square-free.
fn split_square(m: i64) -> (i64, i64) {
    let mut f = 1;
    let mut r = 1;
    let mut rest = m;
    let mut d = 2;
    while d * d <= rest {
        let mut e = 0;
        while rest % d == 0 {
            rest /= d;
            e += 1;
        }
        f *= d.pow(e / 2);
        if e % 2 == 1 {
            r *= d;
        }
        d += 1;
    }
    (f, r * rest)
}

/// Largest `p ≥ 0` with `β - pα` a root.
pub fn root_string_down(
    system: &RootSystem,
    alpha: &RootVector,
    beta: &RootVector,
) -> Result<u32, ChevalleyError> {
    if alpha == beta || *alpha == -beta {
        return Err(ChevalleyError::EqualOrOpposite);
    }
    let mut p = 0;
    let mut cur = beta - alpha;
    while system.is_root(&cur) {
        p += 1;
        cur = &cur - alpha;
    }
    Ok(p)
}

/// `|N_{α,β}|`: zero unless `α + β` is a root.
pub fn n_abs(
    system: &RootSystem,
    alpha: &RootVector,
    beta: &RootVector,
) -> Result<u32, ChevalleyError> {
    let p = root_string_down(system, alpha, beta)?;
    if system.is_root(&(alpha + beta)) {
        Ok(p + 1)
    } else {
        Ok(0)
    }
}

/// `|Ñ_{α,β}|` for `Sign::Plus`, `|Ñ_{α,-β}|` for `Sign::Minus`.
pub fn ntilde_abs(
    system: &RootSystem,
    alpha: &RootVector,
    beta: &RootVector,
    sign: Sign,
) -> Result<NtildeMag, ChevalleyError> {
    let other = match sign {
        Sign::Plus => beta.clone(),
        Sign::Minus if alpha == beta => return Err(ChevalleyError::EqualRootsForMinus),
        Sign::Minus => -beta,
    };
    let sum = alpha + &other;
    if sum.is_zero() || !system.is_root(&sum) {
        return Ok(NtildeMag::ZERO);
    }
    let n = i64::from(n_abs(system, alpha, &other)?);
    let square = alpha.norm2() * beta.norm2() / sum.norm2() * Rational::from_integer(n * n);
    Ok(NtildeMag::from_square(square))
}
