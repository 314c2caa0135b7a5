//! Drinfel'd twist quantization of `U(𝔏̄)[[t]]`.
//!
//! With `h = α⁻¹L(0)` and `e = I(α)` one has `[h, e] = e`, and
//!
//! ```text
//! 𝓕_a = Σ (-1)^r/r! h^{[r]}_a ⊗ e^r t^r      F_a = Σ 1/r! h^{(r)}_a ⊗ e^r t^r
//! u_a = Σ (-1)^r/r! h^{[r]}_{-a} e^r t^r      v_a = Σ 1/r! h^{[r]}_a e^r t^r
//! ```
//!
//! `𝓕 = 𝓕_0` is a twist with inverse `F = F_0`, and `v = v_0` inverts
//! `u = u_0`. The deformed structure is `Δ(x) = 𝓕 Δ₀(x) F` and
//! `S(x) = v S₀(x) u`. Everything is computed modulo `t^{N+1}`.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{One, Zero};

use crate::algebra::{AlgebraMode, Generator};
use crate::combination::{tensor2, Element, Monomial};
use crate::enveloping::Algebra;
use crate::error::{AlgebraError, Result};
use crate::scalar::{factorial, gen_binomial, int, sign, Scalar};
use crate::series::{ElementSeries, Series, Tensor2Series};

/// Session parameters: the root `α`, the truncation order `N` and the mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QParams {
    pub alpha: Scalar,
    pub order: usize,
    pub mode: AlgebraMode,
}

impl QParams {
    pub const DEFAULT_ORDER: usize = 5;

    pub fn new(alpha: Scalar, order: usize) -> Result<Self> {
        Self::with_mode(alpha, order, AlgebraMode::Centerless)
    }

    pub fn with_mode(alpha: Scalar, order: usize, mode: AlgebraMode) -> Result<Self> {
        if alpha.is_zero() {
            return Err(AlgebraError::ZeroAlpha);
        }
        Ok(QParams { alpha, order, mode })
    }
}

/// Twist machinery for fixed `(α, N)` over the centerless algebra.
pub struct Quantizer {
    alpha: Scalar,
    order: usize,
    alg: Algebra,
    h: Element,
    e: Element,
    coproducts: Mutex<HashMap<Generator, Tensor2Series>>,
    antipodes: Mutex<HashMap<Generator, ElementSeries>>,
}

impl std::fmt::Debug for Quantizer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Quantizer")
            .field("alpha", &self.alpha)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

impl Quantizer {
    pub fn new(params: &QParams) -> Result<Self> {
        if params.mode != AlgebraMode::Centerless {
            return Err(AlgebraError::TwistNeedsCenterless);
        }
        Self::with_algebra(params, Algebra::new(AlgebraMode::Centerless))
    }

    /// Uses a caller-supplied algebra, which must be centerless.
    pub fn with_algebra(params: &QParams, alg: Algebra) -> Result<Self> {
        if params.alpha.is_zero() {
            return Err(AlgebraError::ZeroAlpha);
        }
        if alg.mode() != AlgebraMode::Centerless {
            return Err(AlgebraError::TwistNeedsCenterless);
        }
        let alpha = params.alpha.clone();
        let h = Element::generator(Generator::L(Scalar::zero())).scale(&alpha.recip());
        let e = Element::generator(Generator::I(alpha.clone()));
        Ok(Quantizer {
            alpha,
            order: params.order,
            alg,
            h,
            e,
            coproducts: Mutex::new(HashMap::new()),
            antipodes: Mutex::new(HashMap::new()),
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn alpha(&self) -> &Scalar {
        &self.alpha
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `h = α⁻¹ L(0)`.
    pub fn h(&self) -> &Element {
        &self.h
    }

    /// `e = I(α)`.
    pub fn e(&self) -> &Element {
        &self.e
    }

    /// `h + a`.
    pub fn h_shift(&self, a: &Scalar) -> Element {
        &self.h + &Element::scalar(a.clone())
    }

    pub fn e_pow(&self, r: u32) -> Element {
        Element::monomial(Monomial::power(Generator::I(self.alpha.clone()), r))
    }

    /// `h^{(n)}_a = (h+a)(h+a+1)⋯(h+a+n-1)`.
    pub fn rising(&self, a: &Scalar, n: u32) -> Element {
        (0..n).fold(Element::one(), |acc, i| {
            self.alg.mul(&acc, &self.h_shift(&(a + int(i as i64))))
        })
    }

    /// `h^{[n]}_a = (h+a)(h+a-1)⋯(h+a-n+1)`.
    pub fn falling(&self, a: &Scalar, n: u32) -> Element {
        (0..n).fold(Element::one(), |acc, i| {
            self.alg.mul(&acc, &self.h_shift(&(a - int(i as i64))))
        })
    }

    /// `(1 - et)^c = Σ_k binom(c, k) (-1)^k e^k t^k`.
    pub fn one_minus_et_pow(&self, c: &Scalar) -> ElementSeries {
        let coeffs = (0..=self.order as u32)
            .map(|k| self.e_pow(k).scale(&(gen_binomial(c, k) * sign(k))))
            .collect();
        Series::from_coeffs(coeffs, self.order)
    }

    /// `F_a`.
    pub fn twist_f(&self, a: &Scalar) -> Tensor2Series {
        let coeffs = (0..=self.order as u32)
            .map(|r| tensor2(&self.rising(a, r), &self.e_pow(r)).scale(&factorial(r).recip()))
            .collect();
        Series::from_coeffs(coeffs, self.order)
    }

    /// `𝓕_a`.
    pub fn twist_fcal(&self, a: &Scalar) -> Tensor2Series {
        let coeffs = (0..=self.order as u32)
            .map(|r| {
                tensor2(&self.falling(a, r), &self.e_pow(r)).scale(&(sign(r) / factorial(r)))
            })
            .collect();
        Series::from_coeffs(coeffs, self.order)
    }

    /// `u_a`.
    pub fn u_elem(&self, a: &Scalar) -> ElementSeries {
        let na = -a;
        let coeffs = (0..=self.order as u32)
            .map(|r| {
                self.alg
                    .mul(&self.falling(&na, r), &self.e_pow(r))
                    .scale(&(sign(r) / factorial(r)))
            })
            .collect();
        Series::from_coeffs(coeffs, self.order)
    }

    /// `v_a`.
    pub fn v_elem(&self, a: &Scalar) -> ElementSeries {
        let coeffs = (0..=self.order as u32)
            .map(|r| {
                self.alg
                    .mul(&self.falling(a, r), &self.e_pow(r))
                    .scale(&factorial(r).recip())
            })
            .collect();
        Series::from_coeffs(coeffs, self.order)
    }

    pub fn constant<K: crate::combination::Basis>(
        &self,
        x: crate::combination::Combination<K>,
    ) -> Series<K> {
        Series::constant(x, self.order)
    }

    /// `𝓕 Δ₀(x) F`.
    pub fn twisted_coproduct_direct(&self, x: &Element) -> Result<Tensor2Series> {
        self.alg.check_element(x)?;
        let zero = Scalar::zero();
        let mid = self.constant(self.alg.coproduct0(x));
        Ok(self
            .twist_fcal(&zero)
            .mul(&self.alg, &mid)
            .mul(&self.alg, &self.twist_f(&zero)))
    }

    /// `v S₀(x) u`.
    pub fn twisted_antipode_direct(&self, x: &Element) -> Result<ElementSeries> {
        self.alg.check_element(x)?;
        let zero = Scalar::zero();
        let mid = self.constant(self.alg.antipode0(x));
        Ok(self
            .v_elem(&zero)
            .mul(&self.alg, &mid)
            .mul(&self.alg, &self.u_elem(&zero)))
    }

    /// `s · x` for a series `s` and a fixed element `x`.
    fn series_times(&self, s: &ElementSeries, x: &Element) -> ElementSeries {
        s.map(|c| self.alg.mul(c, x))
    }

    /// `Σ_k (x ⊗ s_k) t^k`.
    fn left_tensor(&self, x: &Element, s: &ElementSeries) -> Tensor2Series {
        s.map(|c| tensor2(x, c))
    }

    fn exponent(&self, grade: &Scalar) -> Scalar {
        grade / &self.alpha
    }

    /// Closed-form coproduct on a generator:
    ///
    /// ```text
    /// Δ(L(β)) = 1⊗L(β) + L(β)⊗(1-et)^{β/α} + α h⊗(1-et)^{-1} I(α+β) t
    /// Δ(I(γ)) = 1⊗I(γ) + I(γ)⊗(1-et)^{γ/α}
    /// ```
    pub fn closed_coproduct(&self, g: &Generator) -> Result<Tensor2Series> {
        g.check_mode(AlgebraMode::Centerless)?;
        if let Some(hit) = self.coproducts.lock().expect("cache poisoned").get(g) {
            return Ok(hit.clone());
        }
        let x = Element::generator(g.clone());
        let head = self.constant(tensor2(&Element::one(), &x));
        let out = match g {
            Generator::L(beta) => {
                let tail = self.left_tensor(&x, &self.one_minus_et_pow(&self.exponent(beta)));
                let mut out = head.add(&tail);
                let target = Generator::I(&self.alpha + beta);
                if target.is_legal(AlgebraMode::Centerless) {
                    let geo = self.one_minus_et_pow(&-Scalar::one());
                    let right = self.series_times(&geo, &Element::generator(target));
                    let correction = self.left_tensor(&self.h, &right).shift(1).scale(&self.alpha);
                    out = out.add(&correction);
                }
                out
            }
            Generator::I(gamma) => {
                head.add(&self.left_tensor(&x, &self.one_minus_et_pow(&self.exponent(gamma))))
            }
            _ => unreachable!("central generators rejected above"),
        };
        self.coproducts
            .lock()
            .expect("cache poisoned")
            .insert(g.clone(), out.clone());
        Ok(out)
    }

    /// Closed-form antipode on a generator:
    ///
    /// ```text
    /// S(L(β)) = -(1-et)^{-β/α} L(β) + α (1-et)^{-β/α} (h - β/α) I(α+β) t
    /// S(I(γ)) = -(1-et)^{-γ/α} I(γ)
    /// ```
    ///
    /// The factor `α` on the second term of `S(L(β))` comes from
    /// `[L(β), e] = α I(α+β)`.
    pub fn closed_antipode(&self, g: &Generator) -> Result<ElementSeries> {
        g.check_mode(AlgebraMode::Centerless)?;
        if let Some(hit) = self.antipodes.lock().expect("cache poisoned").get(g) {
            return Ok(hit.clone());
        }
        let x = Element::generator(g.clone());
        let out = match g {
            Generator::L(beta) => {
                let c = self.exponent(beta);
                let pow = self.one_minus_et_pow(&-&c);
                let mut out = self.series_times(&pow, &x).neg();
                let target = Generator::I(&self.alpha + beta);
                if target.is_legal(AlgebraMode::Centerless) {
                    let tail = self.alg.mul(&self.h_shift(&-&c), &Element::generator(target));
                    let correction = self.series_times(&pow, &tail).shift(1).scale(&self.alpha);
                    out = out.add(&correction);
                }
                out
            }
            Generator::I(gamma) => {
                let pow = self.one_minus_et_pow(&-self.exponent(gamma));
                self.series_times(&pow, &x).neg()
            }
            _ => unreachable!("central generators rejected above"),
        };
        self.antipodes
            .lock()
            .expect("cache poisoned")
            .insert(g.clone(), out.clone());
        Ok(out)
    }

    /// `Δ` extended multiplicatively over PBW factors from the closed forms.
    pub fn hopf_extend_coproduct(&self, x: &Element) -> Result<Tensor2Series> {
        self.alg.check_element(x)?;
        let mut out = Series::zero(self.order);
        for (m, c) in x.iter() {
            let mut acc = Series::one(self.order);
            for (g, k) in m.factors() {
                let d = self.closed_coproduct(g)?;
                acc = acc.mul(&self.alg, &d.pow(&self.alg, *k));
            }
            out = out.add(&acc.scale(c));
        }
        Ok(out)
    }

    /// `S` extended anti-multiplicatively over PBW factors.
    pub fn hopf_extend_antipode(&self, x: &Element) -> Result<ElementSeries> {
        self.alg.check_element(x)?;
        let mut out = Series::zero(self.order);
        for (m, c) in x.iter() {
            let mut acc = Series::one(self.order);
            for (g, k) in m.factors().iter().rev() {
                let s = self.closed_antipode(g)?;
                acc = acc.mul(&self.alg, &s.pow(&self.alg, *k));
            }
            out = out.add(&acc.scale(c));
        }
        Ok(out)
    }

    /// `Δ` on a single PBW monomial, as used when applying `Δ` to one leg of a
    /// tensor.
    pub fn coproduct_of_monomial(&self, m: &Monomial) -> Result<Tensor2Series> {
        self.hopf_extend_coproduct(&Element::monomial(m.clone()))
    }

    /// The twisted counit is the undeformed one.
    pub fn counit(&self, x: &Element) -> Scalar {
        self.alg.counit(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combination::Tensor2;
    use crate::scalar::rat;

    fn q(alpha: Scalar, n: usize) -> Quantizer {
        Quantizer::new(&QParams::new(alpha, n).unwrap()).unwrap()
    }

    #[test]
    fn rejects_bad_params() {
        assert_eq!(QParams::new(int(0), 3), Err(AlgebraError::ZeroAlpha));
        let p = QParams::new(int(1), 3).unwrap();
        assert!(matches!(
            Quantizer::with_algebra(&p, Algebra::new(AlgebraMode::Full)),
            Err(AlgebraError::TwistNeedsCenterless)
        ));
        let full = QParams::with_mode(int(1), 3, AlgebraMode::Full).unwrap();
        assert!(matches!(Quantizer::new(&full), Err(AlgebraError::TwistNeedsCenterless)));
    }

    #[test]
    fn h_and_e_satisfy_borel_relation() {
        for alpha in [int(1), int(2), rat(-1, 2), int(-3)] {
            let qz = q(alpha, 0);
            let alg = qz.algebra();
            assert_eq!(alg.commutator(qz.h(), qz.e()), qz.e().clone());
        }
    }

    #[test]
    fn rising_small_cases() {
        let qz = q(int(2), 0);
        let a = rat(3, 2);
        assert_eq!(qz.rising(&a, 0), Element::one());
        let h = qz.h().clone();
        let alg = qz.algebra();
        let want = alg.mul(&h, &h)
            + h.scale(&(int(2) * &a + int(1)))
            + Element::scalar(&a * (&a + int(1)));
        assert_eq!(qz.rising(&a, 2), want);
    }

    #[test]
    fn binomial_series_examples() {
        let qz = q(int(1), 4);
        let one_minus = qz.one_minus_et_pow(&int(1));
        assert_eq!(one_minus.coeff(0), &Element::one());
        assert_eq!(one_minus.coeff(1), &-qz.e().clone());
        assert!((2..=4).all(|k| one_minus.coeff(k).is_zero()));
        let geo = qz.one_minus_et_pow(&int(-1));
        for k in 0..=4 {
            assert_eq!(geo.coeff(k), &qz.e_pow(k as u32));
        }
    }

    #[test]
    fn twist_low_coefficients() {
        let qz = q(int(1), 3);
        let a = rat(1, 2);
        let f = qz.twist_f(&a);
        assert_eq!(f.coeff(0), &Tensor2::one());
        assert_eq!(f.coeff(1), &tensor2(&qz.h_shift(&a), qz.e()));
        assert_eq!(qz.u_elem(&a).coeff(0), &Element::one());
    }

    #[test]
    fn direct_conjugation_on_unit() {
        let qz = q(int(1), 3);
        assert_eq!(
            qz.twisted_coproduct_direct(&Element::one()).unwrap(),
            Series::one(3)
        );
        assert_eq!(
            qz.twisted_antipode_direct(&Element::one()).unwrap(),
            Series::one(3)
        );
        assert_eq!(qz.hopf_extend_coproduct(&Element::one()).unwrap(), Series::one(3));
    }

    #[test]
    fn central_generators_rejected() {
        let qz = q(int(1), 1);
        assert!(qz.closed_coproduct(&Generator::CL).is_err());
        assert!(qz.closed_antipode(&Generator::i(0)).is_err());
    }
}
