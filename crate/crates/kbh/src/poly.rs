//! Laurent polynomials in one variable, plus the bivariate Poincaré variant.
//!
//! Coefficients are `i64`: every polynomial in this crate is either a state
//! sum over at most 2^30 states or an alternating sum of homology ranks, so
//! exact `i64` arithmetic is safe by a wide margin.

use std::collections::BTreeMap;
use std::fmt;

/// Laurent polynomial with integer coefficients in a single named variable.
///
/// Zero coefficients are never stored, so equality of the coefficient maps is
/// equality of polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    var: &'static str,
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero(var: &'static str) -> Self {
        LaurentPoly { var, coeffs: BTreeMap::new() }
    }

    pub fn one(var: &'static str) -> Self {
        Self::monomial(var, 1, 0)
    }

    pub fn monomial(var: &'static str, coeff: i64, exp: i64) -> Self {
        let mut p = Self::zero(var);
        p.add_term(coeff, exp);
        p
    }

    pub fn from_terms(var: &'static str, terms: &[(i64, i64)]) -> Self {
        let mut p = Self::zero(var);
        for &(coeff, exp) in terms {
            p.add_term(coeff, exp);
        }
        p
    }

    pub fn var(&self) -> &'static str {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    /// Terms as (exponent, coefficient), ascending exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn add_term(&mut self, coeff: i64, exp: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.var, other.var, "variable mismatch");
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(c, e);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.var);
        for (e, c) in self.terms() {
            out.add_term(-c, e);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.var, other.var, "variable mismatch");
        let mut out = Self::zero(self.var);
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }

    pub fn mul_monomial(&self, coeff: i64, exp: i64) -> Self {
        let mut out = Self::zero(self.var);
        for (e, c) in self.terms() {
            out.add_term(c * coeff, e + exp);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(self.var);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Substitute the variable by `coeff * newvar^exp`.
    ///
    /// Used for identities like f̂(A) = ±Ĵ(A^{-2}): substitute with exp = -2.
    pub fn substitute(&self, newvar: &'static str, coeff: i64, exp: i64) -> Self {
        let mut out = Self::zero(newvar);
        for (e, c) in self.terms() {
            // coeff^e only makes sense termwise for coeff = ±1; that is the
            // only case the identities here need.
            assert!(coeff == 1 || coeff == -1, "only unit scaling supported");
            let sign = if coeff == -1 && e.rem_euclid(2) == 1 { -1 } else { 1 };
            out.add_term(c * sign, e * exp);
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical form: descending exponents, `-A^28+A^24-A^20+A^16+A^8`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&exp, &c) in self.coeffs.iter().rev() {
            write_term(f, c, self.var, exp, first)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn write_term(
    f: &mut fmt::Formatter<'_>,
    coeff: i64,
    var: &str,
    exp: i64,
    first: bool,
) -> fmt::Result {
    if coeff < 0 {
        write!(f, "-")?;
    } else if !first {
        write!(f, "+")?;
    }
    let a = coeff.unsigned_abs();
    if exp == 0 {
        return write!(f, "{a}");
    }
    if a != 1 {
        write!(f, "{a}")?;
    }
    if exp == 1 {
        write!(f, "{var}")
    } else {
        write!(f, "{var}^{exp}")
    }
}

/// Bivariate Poincaré polynomial: terms t^i v^j with integer coefficients.
///
/// `t` tracks the homological direction (the parity 0/1 for the framed
/// theory, the cohomological degree for the classical one); `v` is the main
/// grading variable.
#[derive(Clone, PartialEq, Eq)]
pub struct PoincarePoly {
    var: &'static str,
    coeffs: BTreeMap<(i64, i64), i64>,
}

impl PoincarePoly {
    pub fn zero(var: &'static str) -> Self {
        PoincarePoly { var, coeffs: BTreeMap::new() }
    }

    pub fn var(&self) -> &'static str {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, coeff: i64, t_exp: i64, v_exp: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.coeffs.entry((t_exp, v_exp)).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.coeffs.remove(&(t_exp, v_exp));
        }
    }

    /// Terms as ((t exponent, v exponent), coefficient).
    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), i64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    pub fn coeff(&self, t_exp: i64, v_exp: i64) -> i64 {
        self.coeffs.get(&(t_exp, v_exp)).copied().unwrap_or(0)
    }

    /// Specialize t to ±1, collapsing to a univariate polynomial.
    ///
    /// t = -1 gives the graded Euler characteristic of whatever this
    /// polynomial counts.
    pub fn eval_t(&self, t: i64) -> LaurentPoly {
        assert!(t == 1 || t == -1);
        let mut out = LaurentPoly::zero(self.var);
        for ((te, ve), c) in self.terms() {
            let sign = if t == -1 && te.rem_euclid(2) == 1 { -1 } else { 1 };
            out.add_term(c * sign, ve);
        }
        out
    }

    /// The t^i slice as a univariate polynomial.
    pub fn t_slice(&self, t_exp: i64) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.var);
        for ((te, ve), c) in self.terms() {
            if te == t_exp {
                out.add_term(c, ve);
            }
        }
        out
    }

    pub fn t_exponents(&self) -> Vec<i64> {
        let mut es: Vec<i64> = self.coeffs.keys().map(|&(t, _)| t).collect();
        es.dedup();
        es.sort_unstable();
        es.dedup();
        es
    }
}

impl fmt::Display for PoincarePoly {
    /// Canonical form: ascending t groups, each slice in canonical univariate
    /// form, `A^30+A^22+t(A^22+A^14+A^10+A^6)`, `t^2(...)` beyond degree one.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for t_exp in self.t_exponents() {
            let slice = self.t_slice(t_exp);
            if slice.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match t_exp {
                0 => write!(f, "{slice}")?,
                1 => write!(f, "t({slice})")?,
                _ => write!(f, "t^{t_exp}({slice})")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PoincarePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_descending_with_signs() {
        let p = LaurentPoly::from_terms("A", &[(1, 8), (-1, 28), (1, 24), (-1, 20), (1, 16)]);
        assert_eq!(p.to_string(), "-A^28+A^24-A^20+A^16+A^8");
    }

    #[test]
    fn display_units_and_constants() {
        assert_eq!(LaurentPoly::zero("A").to_string(), "0");
        assert_eq!(LaurentPoly::monomial("A", 1, 0).to_string(), "1");
        assert_eq!(LaurentPoly::monomial("A", -2, 1).to_string(), "-2A");
        assert_eq!(LaurentPoly::monomial("A", 3, -2).to_string(), "3A^-2");
        let p = LaurentPoly::from_terms("q", &[(1, -1), (1, 1)]);
        assert_eq!(p.to_string(), "q+q^-1");
    }

    #[test]
    fn cancellation_drops_zero_coefficients() {
        let p = LaurentPoly::from_terms("A", &[(1, 2), (1, 0)]);
        let q = LaurentPoly::from_terms("A", &[(-1, 2), (1, 0)]);
        let s = p.add(&q);
        assert_eq!(s, LaurentPoly::monomial("A", 2, 0));
        assert_eq!(s.terms().count(), 1);
    }

    #[test]
    fn ring_ops() {
        // (-A^2 - A^-2)^2 = A^4 + 2 + A^-4
        let loopv = LaurentPoly::from_terms("A", &[(-1, 2), (-1, -2)]);
        let sq = loopv.pow(2);
        assert_eq!(sq, LaurentPoly::from_terms("A", &[(1, 4), (2, 0), (1, -4)]));
        assert_eq!(loopv.pow(0), LaurentPoly::one("A"));
    }

    #[test]
    fn substitute_negative_exponent() {
        // q + q^-1 under q -> A^-2 becomes A^-2 + A^2
        let p = LaurentPoly::from_terms("q", &[(1, 1), (1, -1)]);
        let s = p.substitute("A", 1, -2);
        assert_eq!(s, LaurentPoly::from_terms("A", &[(1, -2), (1, 2)]));
    }

    #[test]
    fn poincare_display_groups_by_t() {
        let mut p = PoincarePoly::zero("A");
        p.add_term(1, 0, 30);
        p.add_term(1, 0, 22);
        p.add_term(1, 1, 22);
        p.add_term(1, 1, 14);
        p.add_term(1, 1, 10);
        p.add_term(1, 1, 6);
        assert_eq!(p.to_string(), "A^30+A^22+t(A^22+A^14+A^10+A^6)");
    }

    #[test]
    fn poincare_euler_specialization() {
        let mut p = PoincarePoly::zero("q");
        p.add_term(1, 0, 1);
        p.add_term(2, 1, 3);
        p.add_term(1, 2, 3);
        let chi = p.eval_t(-1);
        assert_eq!(chi, LaurentPoly::from_terms("q", &[(1, 1), (-1, 3)]));
    }

    #[test]
    fn poincare_negative_t_groups() {
        let mut p = PoincarePoly::zero("q");
        p.add_term(1, -2, -7);
        p.add_term(1, 0, -3);
        assert_eq!(p.to_string(), "t^-2(q^-7)+q^-3");
    }
}
