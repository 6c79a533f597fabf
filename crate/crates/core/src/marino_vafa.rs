//! The Mariño–Vafa series R and its two-partition analogue R•.

use crate::chern_simons::{w_one, w_pair};
use crate::error::{Error, Result};
use crate::exact::{bernoulli, q, qf, qfun_to_lambda, ExactScalar, LambdaSeries, QFunction, Q, TauLaurent};
use crate::hurwitz::{burnside_phi, double_hurwitz};
use crate::partition::{character, enumerate_partitions, factorial, partitions_up_to, qn, Partition};
use crate::report::CheckReport;
use crate::series::{Key, PSeries};
use num_traits::{One, Signed, Zero};

/// Generating series with `families` ∈ {1, 2} through p-weight `degree`
/// and λ-order `order` (exclusive) on the connected side.
#[derive(Debug, Clone)]
pub struct MvSeries {
    pub families: usize,
    pub degree: usize,
    pub order: i32,
    pub disconnected: PSeries<LambdaSeries>,
    connected: Option<PSeries<LambdaSeries>>,
}

impl MvSeries {
    /// log of the disconnected series (computed once for one family).
    pub fn connected(&self) -> Result<PSeries<LambdaSeries>> {
        match &self.connected {
            Some(c) => Ok(c.clone()),
            None => Ok(truncate_all(&self.disconnected.log()?, self.order)),
        }
    }
}

fn truncate_all(s: &PSeries<LambdaSeries>, l: i32) -> PSeries<LambdaSeries> {
    s.map(|_, c| c.truncate(l))
}

/// `e^{√−1 c(τ) λ/2}` through `λ^l`.
fn exp_i_half(c: &TauLaurent, l: i32) -> LambdaSeries {
    let mut v = Vec::with_capacity(l.max(0) as usize);
    let step = c.scale(&ExactScalar::new(Q::zero(), qf(1, 2)));
    let mut t = TauLaurent::one();
    for k in 0..l.max(0) {
        v.push(t.clone());
        t = (&t * &step).scale_q(&(Q::one() / q(k as i64 + 1)));
    }
    LambdaSeries::new(0, l.max(0), v)
}

fn chi_over_z(nu: &Partition, mu: &Partition) -> Result<Q> {
    Ok(q(character(nu, mu)?) / qn(mu.z()))
}

/// Builds R• and, for one family, R = log R•.
///
/// One family: Σ χ_ν(μ)/z_μ e^{√−1(τ+½)κ_νλ/2} W_ν p_μ. Two families use
/// e^{√−1(κ_{ν⁺}τ + κ_{ν⁻}τ^{−1})λ/2} W_{ν⁺,ν⁻}; `degree` caps the total weight.
pub fn mv_r(degree: usize, order: i32, families: usize) -> Result<MvSeries> {
    if degree == 0 {
        return Err(Error::Invalid("degree cap must be ≥ 1".into()));
    }
    // a product of k coefficients with poles λ^{−|μ^i|} loses at most Σ|μ^i| ≤ degree
    let t = order + degree as i32;
    match families {
        1 => {
            let mut s = PSeries::zero(1, degree);
            for mu in partitions_up_to(degree) {
                s.insert(vec![mu.clone()], one_family_coeff(&mu, t)?);
            }
            let connected = truncate_all(&s.log()?, order);
            Ok(MvSeries { families, degree, order, disconnected: s, connected: Some(connected) })
        }
        2 => {
            let mut s = PSeries::zero(2, degree);
            for a in 0..=degree {
                for mp in partitions_up_to(a).into_iter().filter(|m| m.size() == a) {
                    for mm in partitions_up_to(degree - a) {
                        s.insert(vec![mp.clone(), mm.clone()], two_family_coeff(&mp, &mm, t)?);
                    }
                }
            }
            Ok(MvSeries { families, degree, order, disconnected: s, connected: None })
        }
        _ => Err(Error::Invalid(format!("families must be 1 or 2, got {families}"))),
    }
}

fn one_family_coeff(mu: &Partition, t: i32) -> Result<LambdaSeries> {
    if mu.is_empty() {
        return Ok(LambdaSeries::one(t));
    }
    let mut acc = LambdaSeries::zero(t);
    let shift = TauLaurent::from_coeffs(0, vec![ExactScalar::real(qf(1, 2)), ExactScalar::from_int(1)]);
    for nu in enumerate_partitions(mu.size()) {
        let c = chi_over_z(&nu, mu)?;
        if c.is_zero() {
            continue;
        }
        let w = qfun_to_lambda(&w_one(&nu), t)?;
        let e = exp_i_half(&shift.scale_q(&q(nu.kappa())), t);
        acc = acc.add(&e.mul(&w).scale(&ExactScalar::real(c)));
    }
    Ok(acc)
}

fn two_family_coeff(mp: &Partition, mm: &Partition, t: i32) -> Result<LambdaSeries> {
    let mut acc = LambdaSeries::zero(t);
    for np in enumerate_partitions(mp.size()) {
        let cp = chi_over_z(&np, mp)?;
        if cp.is_zero() {
            continue;
        }
        for nm in enumerate_partitions(mm.size()) {
            let cm = chi_over_z(&nm, mm)?;
            if cm.is_zero() {
                continue;
            }
            let w = qfun_to_lambda(&w_pair(&np, &nm)?, t)?;
            let kap = TauLaurent::from_coeffs(
                -1,
                vec![ExactScalar::from_int(nm.kappa()), ExactScalar::zero(), ExactScalar::from_int(np.kappa())],
            );
            let e = exp_i_half(&kap, t);
            acc = acc.add(&e.mul(&w).scale(&ExactScalar::real(&cp * &cm)));
        }
    }
    Ok(acc)
}

fn times_i_lambda(s: &PSeries<LambdaSeries>) -> PSeries<LambdaSeries> {
    s.map(|_, c| c.shift(1).scale(&ExactScalar::i()))
}

fn min_trunc(s: &PSeries<LambdaSeries>) -> i32 {
    s.terms().map(|(_, c)| c.trunc()).min().unwrap_or(i32::MAX)
}

/// A residual series and the λ-order through which it is known.
#[derive(Debug, Clone)]
pub struct PdeResidual {
    pub residual: PSeries<LambdaSeries>,
    pub verified_through: i32,
}

impl PdeResidual {
    pub fn vanishes(&self) -> bool {
        self.residual.terms().all(|(_, c)| c.is_zero())
    }
}

/// The cut-and-join residual; identically zero when the equation holds.
///
/// One family: ∂_τR − √−1λ·CJ(R) on the connected series (CJ carries its own ½).
/// Two families: ∂_τR• − √−1λ(CJ⁺ − τ^{−2}CJ⁻)R• on the disconnected series.
pub fn mv_pde_residual(s: &MvSeries) -> Result<PdeResidual> {
    let (lhs, rhs) = match s.families {
        1 => {
            let r = s.connected()?;
            (r.d_tau(), times_i_lambda(&r.cut_join_nonlinear(0)?))
        }
        _ => {
            let r = &s.disconnected;
            let minus = r.cut_join_linear(1).map(|_, c| c.scale_tau(&TauLaurent::monomial(-2, ExactScalar::from_int(1))));
            (r.d_tau(), times_i_lambda(&r.cut_join_linear(0).sub(&minus)?))
        }
    };
    let verified_through = min_trunc(&lhs).min(min_trunc(&rhs));
    Ok(PdeResidual { residual: lhs.sub(&rhs)?, verified_through })
}

/// `p_d/(2d sin(dλ/2))` as a λ-series.
pub fn ooguri_vafa_term(d: usize, l: i32) -> Result<LambdaSeries> {
    let f = QFunction::sine(d as i64).inv()?.scale(&(Q::one() / q(d as i64)));
    qfun_to_lambda(&f, l)
}

/// R(λ; 0; p) against Σ_d √−1^{d−1} p_d/(2d sin(dλ/2)).
///
/// The phase is A(0) for μ = (d); the bare sum without it already fails at p_2.
pub fn mv_initial_value_check(degree: usize, order: i32) -> Result<CheckReport> {
    let s = mv_r(degree, order, 1)?;
    let c = s.connected()?;
    let mut rep = CheckReport::new("mv-initial-value");
    for mu in partitions_up_to(degree).into_iter().filter(|m| !m.is_empty()) {
        let got = c.coeff(&[mu.clone()]).eval_tau(&Q::zero());
        let want = if mu.len() == 1 {
            ooguri_vafa_term(mu.part(0), order)?.scale(&ExactScalar::i_pow(mu.part(0) as i64 - 1))
        } else {
            LambdaSeries::zero(order)
        };
        let ok = got.agrees_with(&want) && got.trunc() >= order.min(want.trunc());
        rep.expect(ok, || format!("p_{mu}: {got} vs {want}"));
    }
    Ok(rep)
}

/// A(τ) = −√−1^{|μ|+l}/|Aut μ| [τ(τ+1)]^{l−1} ∏_i ∏_{a<μ_i}(μ_iτ+a)/(μ_i−1)!.
pub fn a_prefactor(mu: &Partition) -> Result<TauLaurent> {
    if mu.is_empty() {
        return Err(Error::Invalid("A(τ) needs a nonempty partition".into()));
    }
    let one = ExactScalar::from_int(1);
    let lin = |a: i64, b: i64| TauLaurent::from_coeffs(0, vec![ExactScalar::from_int(b), ExactScalar::from_int(a)]);
    let tt1 = &TauLaurent::tau() * &lin(1, 1);
    let mut p = TauLaurent::constant(one);
    for _ in 1..mu.len() {
        p = &p * &tt1;
    }
    let mut denom = qn(mu.aut());
    for &m in mu.parts() {
        for a in 1..m as i64 {
            p = &p * &lin(m as i64, a);
        }
        denom *= qn(factorial(m - 1));
    }
    let c = ExactScalar::i_pow((mu.size() + mu.len()) as i64).scale(&(-Q::one() / denom));
    Ok(p.scale(&c))
}

/// The triple Hodge integral ∫ Λ^∨(1)Λ^∨(−τ−1)Λ^∨(τ)/∏(1−μ_iψ_i) as a
/// τ-polynomial, ascending coefficients.
pub fn mv_hodge_extract(g: usize, mu: &Partition) -> Result<Vec<Q>> {
    let e = 2 * g as i32 - 2 + mu.len() as i32;
    let s = mv_r(mu.size(), e + 1, 1)?;
    hodge_from(&s, g, mu)
}

/// As [`mv_hodge_extract`] but reusing an already built series.
pub fn hodge_from(s: &MvSeries, g: usize, mu: &Partition) -> Result<Vec<Q>> {
    let e = 2 * g as i32 - 2 + mu.len() as i32;
    let c = s.connected()?.coeff(&[mu.clone()]);
    let coeff = c
        .try_coeff(e)
        .ok_or_else(|| Error::Truncation(format!("λ^{e} of p_{mu} not available")))?;
    let a = a_prefactor(mu)?;
    let quo = coeff
        .div_exact(&a)
        .ok_or_else(|| Error::NonzeroRemainder(format!("({coeff}) / A(τ) for g={g}, μ={mu}")))?;
    if !quo.is_real() {
        return Err(Error::Inconsistency(format!("imaginary Hodge integral for g={g}, μ={mu}: {quo}")));
    }
    if quo.min_exp().is_some_and(|m| m < 0) {
        return Err(Error::Inconsistency(format!("negative τ-power in Hodge integral g={g}, μ={mu}")));
    }
    let top = quo.max_exp().unwrap_or(-1);
    Ok((0..=top).map(|k| quo.coeff(k).re).collect())
}

/// b_g = (2^{2g−1}−1)/2^{2g−1} · |B_{2g}|/(2g)!, b_0 = 1.
pub fn b_g(g: usize) -> Q {
    if g == 0 {
        return Q::one();
    }
    let p = qn(1u128 << (2 * g - 1));
    (&p - Q::one()) / p * bernoulli(2 * g).abs() / qn(factorial(2 * g))
}

/// Value at τ = 0 of the extracted polynomial against b_g |μ|^{2g+l−3}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaGValue {
    pub g: usize,
    pub mu: Partition,
    pub at_zero: Q,
    pub expected_abs: Q,
    /// +1 or −1 when |value| matches, 0 otherwise.
    pub sign: i32,
}

pub fn lambda_g_value(s: &MvSeries, g: usize, mu: &Partition) -> Result<LambdaGValue> {
    if g == 0 {
        return Err(Error::Invalid("λ_g identity needs g ≥ 1".into()));
    }
    let poly = hodge_from(s, g, mu)?;
    let at_zero = poly.first().cloned().unwrap_or_else(Q::zero);
    let ex = 2 * g as i32 + mu.len() as i32 - 3;
    let base = q(mu.size() as i64);
    let pw = if ex >= 0 { num_traits::pow(base, ex as usize) } else { Q::one() / num_traits::pow(base, (-ex) as usize) };
    let expected_abs = b_g(g) * pw;
    let sign = if at_zero == expected_abs {
        1
    } else if at_zero == -expected_abs.clone() {
        -1
    } else {
        0
    };
    Ok(LambdaGValue { g, mu: mu.clone(), at_zero, expected_abs, sign })
}

/// λ_g identity for g ∈ 1..=max_genus, |μ| ≤ max_size, one global sign.
pub fn lambda_g_check(max_genus: usize, max_size: usize) -> Result<CheckReport> {
    let order = 2 * max_genus as i32 - 2 + max_size as i32 + 1;
    let s = mv_r(max_size, order, 1)?;
    let mut rep = CheckReport::new("lambda-g");
    let mut global = 0;
    for g in 1..=max_genus {
        for mu in partitions_up_to(max_size).into_iter().filter(|m| !m.is_empty()) {
            let v = lambda_g_value(&s, g, &mu)?;
            if global == 0 {
                global = v.sign;
            }
            rep.expect(v.sign != 0 && v.sign == global, || {
                format!("g={g} μ={mu}: {} vs ±{}", v.at_zero, v.expected_abs)
            });
        }
    }
    Ok(rep.note(format!("global sign {global:+}")))
}

/// lim_{τ→0} R(λτ; 1/τ; (λτ)^d p_d) against Φ(√−1λ; p).
///
/// The λ^e τ^j term of R_μ becomes λ^{e+|μ|} τ^{e+|μ|−j}: the limit keeps
/// j = e+|μ| and needs j ≤ e+|μ| everywhere.
pub fn mv_to_elsv_limit(degree: usize, order: i32) -> Result<CheckReport> {
    let s = mv_r(degree, order, 1)?;
    let c = s.connected()?;
    let mut rep = CheckReport::new("mv-elsv-limit");
    for mu in partitions_up_to(degree).into_iter().filter(|m| !m.is_empty()) {
        let n = mu.size() as i32;
        let r = c.coeff(&[mu.clone()]);
        let phi = burnside_phi(&mu, order + n)?.subst_scale(&ExactScalar::i());
        for e in r.floor()..r.trunc() {
            let t = r.coeff(e);
            let m = e + n;
            rep.expect(t.max_exp().is_none_or(|j| j <= m), || format!("p_{mu} λ^{e}: negative τ-power survives"));
            let got = t.coeff(m);
            let want = phi.try_coeff(m).map(|x| x.coeff(0)).unwrap_or_default();
            rep.expect(got == want, || format!("p_{mu} λ^{m}: {got:?} vs {want:?}"));
        }
    }
    Ok(rep)
}

/// Solves M K = G for a unit-diagonal-at-λ⁰ matrix over λ-series.
fn solve_series(mut m: Vec<Vec<LambdaSeries>>, mut b: Vec<LambdaSeries>) -> Result<Vec<LambdaSeries>> {
    let n = b.len();
    for col in 0..n {
        let piv = m[col][col].clone();
        if piv.valuation() != Some(0) {
            return Err(Error::NonInvertibleLeading(format!("pivot {col}: {piv}")));
        }
        for row in col + 1..n {
            if m[row][col].is_zero() {
                continue;
            }
            let f = m[row][col].div(&piv)?;
            for k in col..n {
                let t = f.mul(&m[col][k]);
                m[row][k] = m[row][k].sub(&t);
            }
            let t = f.mul(&b[col]);
            b[row] = b[row].sub(&t);
        }
    }
    let mut x = vec![LambdaSeries::zero(0); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for k in row + 1..n {
            acc = acc.sub(&m[row][k].mul(&x[k]));
        }
        x[row] = acc.div(&m[row][row])?;
    }
    Ok(x)
}

/// R•_μ(λ,τ) = Σ_ν Φ•_{μ,ν}(√−1τλ) z_ν K•_ν(λ): solve for K• at τ = 1 and
/// check the identity at τ = 2 and τ = 3.
pub fn convolution_check(degree: usize, order: i32) -> Result<CheckReport> {
    let s = mv_r(degree, order, 1)?;
    let t = order + degree as i32;
    let mut rep = CheckReport::new("mv-convolution");
    for n in 1..=degree {
        let parts = enumerate_partitions(n);
        let phi: Vec<Vec<LambdaSeries>> = parts
            .iter()
            .map(|mu| parts.iter().map(|nu| double_hurwitz(mu, nu, t).map(|x| x.scale(&ExactScalar::real(qn(nu.z())))))
                .collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let at = |tau: i64| -> Vec<Vec<LambdaSeries>> {
            let sc = ExactScalar::new(Q::zero(), q(tau));
            phi.iter().map(|row| row.iter().map(|x| x.subst_scale(&sc)).collect()).collect()
        };
        let g = |tau: i64| -> Vec<LambdaSeries> {
            parts.iter().map(|mu| s.disconnected.coeff(&[mu.clone()]).eval_tau(&q(tau))).collect()
        };
        let k = solve_series(at(1), g(1))?;
        for tau in [1, 2, 3] {
            let m = at(tau);
            for (i, mu) in parts.iter().enumerate() {
                let mut acc = LambdaSeries::zero(t);
                for (j, kj) in k.iter().enumerate() {
                    acc = acc.add(&m[i][j].mul(kj));
                }
                let want = &g(tau)[i];
                let ok = acc.agrees_with(want) && acc.trunc().min(want.trunc()) >= order - n as i32;
                rep.expect(ok, || format!("τ={tau}, μ={mu}: {acc} vs {want}"));
            }
        }
    }
    Ok(rep)
}

/// R•(p⁺,p⁻;τ) = R•(p⁻,p⁺;1/τ).
pub fn swap_symmetry_check(s: &MvSeries) -> CheckReport {
    let mut rep = CheckReport::new("mv-swap-symmetry");
    let swapped = s.disconnected.swap_families(0, 1);
    for (key, c) in s.disconnected.terms() {
        let other = swapped.coeff(key).map_coeffs(|x| x.invert_var());
        rep.expect(c.agrees_with(&other), || format!("key {key:?}"));
    }
    rep
}

/// R•(p⁺, 0; τ) against the one-family R• under p_d ↦ (−√−1)^d p_d.
pub fn slice_check(two: &MvSeries, one: &MvSeries) -> CheckReport {
    let mut rep = CheckReport::new("mv-slice");
    for mu in partitions_up_to(two.degree.min(one.degree)) {
        let key: Key = vec![mu.clone(), Partition::empty()];
        let lhs = two.disconnected.coeff(&key);
        let rhs = one.disconnected.coeff(&[mu.clone()]).scale(&ExactScalar::i_pow(-(mu.size() as i64)));
        rep.expect(lhs.agrees_with(&rhs), || format!("p⁺_{mu}: {lhs} vs {rhs}"));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefactor_degree() {
        for mu in partitions_up_to(5).into_iter().filter(|m| !m.is_empty()) {
            let a = a_prefactor(&mu).unwrap();
            assert_eq!(a.max_exp().unwrap(), (mu.size() + mu.len()) as i32 - 2, "{mu}");
        }
    }

    #[test]
    fn b_values() {
        assert_eq!(b_g(1), qf(1, 24));
        assert_eq!(b_g(2), qf(7, 5760));
    }

    #[test]
    fn empty_coefficient_is_one() {
        let s = mv_r(2, 4, 1).unwrap();
        assert!(s.disconnected.constant_term().agrees_with(&LambdaSeries::one(6)));
    }
}
