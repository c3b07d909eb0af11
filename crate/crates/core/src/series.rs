//! Truncated power series over a [`Field`].

use crate::scalar::Field;

/// `c[0] + c[1] x + ... + c[n] x^n`, arithmetic truncated at `x^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series<T> {
    c: Vec<T>,
}

impl<T: Field> Series<T> {
    /// Pads with zeros or truncates so the series has exactly `order + 1` terms.
    pub fn new(mut c: Vec<T>, order: usize) -> Self {
        c.resize(order + 1, T::zero());
        Series { c }
    }

    pub fn constant(v: T, order: usize) -> Self {
        Self::new(vec![v], order)
    }

    /// The series `x`.
    pub fn var(order: usize) -> Self {
        Self::new(vec![T::zero(), T::one()], order)
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeff(&self, k: usize) -> T {
        self.c.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.c
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Series {
            c: (0..=n).map(|k| self.coeff(k) + o.coeff(k)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Series {
            c: (0..=n).map(|k| self.coeff(k) - o.coeff(k)).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        Series {
            c: self.c.iter().map(|v| v.clone() * s.clone()).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut c = vec![T::zero(); n + 1];
        for (i, a) in self.c.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate().take(n + 1 - i) {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Series { c }
    }

    /// `self^alpha` for a series with unit constant term, by the binomial series.
    pub fn pow(&self, alpha: &T) -> Self {
        assert!(self.c[0] == T::one(), "pow needs a unit constant term");
        let n = self.order();
        let f = self.sub(&Self::constant(T::one(), n));
        let mut out = Self::constant(T::one(), n);
        let mut fk = Self::constant(T::one(), n);
        let mut binom = T::one();
        for k in 1..=n {
            fk = fk.mul(&f);
            binom = binom * (alpha.clone() - T::int(k as i64 - 1)) / T::int(k as i64);
            out = out.add(&fk.scale(&binom));
        }
        out
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn recip(&self) -> Self {
        let c0 = self.c[0].clone();
        assert!(!c0.is_zero(), "recip needs a nonzero constant term");
        let unit = self.scale(&(T::one() / c0.clone()));
        unit.pow(&-T::one()).scale(&(T::one() / c0))
    }

    /// `self(inner(x))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Self {
        assert!(inner.c[0].is_zero(), "inner series must vanish at zero");
        let n = self.order().min(inner.order());
        let mut out = Self::constant(T::zero(), n);
        for a in self.c.iter().take(n + 1).rev() {
            out = out.mul(inner).add(&Self::constant(a.clone(), n));
        }
        out
    }

    /// Formal derivative, losing one order.
    pub fn derivative(&self) -> Self {
        let n = self.order();
        let c = (1..=n)
            .map(|k| self.c[k].clone() * T::int(k as i64))
            .collect::<Vec<_>>();
        Self::new(c, n.saturating_sub(1))
    }

    /// Re-truncates to a lower order.
    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.c.clone(), order)
    }
}

/// Reverts `y = x (1 + c1 x + ... + cn x^n)` into `x = y (1 + d1 y + ... + dn y^n)`
/// with the Lagrange inversion formula `[y^k] x = (1/k) [x^(k-1)] (1 + c(x))^(-k)`.
pub fn lagrange_revert<T: Field>(c: &[T]) -> Vec<T> {
    let n = c.len();
    let mut bracket = vec![T::one()];
    bracket.extend_from_slice(c);
    let bracket = Series::new(bracket, n);
    (1..=n)
        .map(|k| {
            let p = bracket.pow(&T::int(-(k as i64 + 1)));
            p.coeff(k) / T::int(k as i64 + 1)
        })
        .collect()
}
