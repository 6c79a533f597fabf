//! Hurwitz numbers (Burnside sums and the cut-and-join equation), the ELSV
//! normalization, and ψ-intersections from large-degree asymptotics.

use crate::error::{Error, Result};
use crate::exact::{q, ExactScalar, LambdaSeries, Q, TauLaurent};
use crate::linalg;
use crate::partition::{character, enumerate_partitions, factorial, hook_dim, partitions_up_to, qn, Partition};
use crate::series::PSeries;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

/// `e^{cλ}` through `λ^l` (exclusive).
pub fn exp_linear(c: &Q, l: i32) -> LambdaSeries {
    let mut v = Vec::with_capacity(l.max(0) as usize);
    let mut t = Q::one();
    for k in 0..l.max(0) {
        v.push(t.clone());
        t = t * c / q(k as i64 + 1);
    }
    LambdaSeries::from_rationals(0, l.max(0), v)
}

/// The exponent r = 2g − 2 + |μ| + l(μ) (number of simple branch points).
pub fn branch_points(g: usize, mu: &Partition) -> i64 {
    2 * g as i64 - 2 + mu.size() as i64 + mu.len() as i64
}

/// Disconnected Burnside series Σ_μ Σ_ν χ_ν(μ)/z_μ e^{κ_ν λ/2} dim R_ν/|ν|! p_μ.
pub fn burnside_disconnected(cap: usize, l: i32) -> PSeries<LambdaSeries> {
    let mut s = PSeries::zero(1, cap);
    for mu in partitions_up_to(cap) {
        let mut acc = LambdaSeries::zero(l);
        let z = qn(mu.z());
        for nu in enumerate_partitions(mu.size()) {
            let chi = character(&nu, &mu).expect("sizes agree");
            if chi == 0 {
                continue;
            }
            let c = q(chi) / &z * hook_dim(&nu);
            let e = exp_linear(&(q(nu.kappa()) / q(2)), l);
            acc = acc.add(&e.scale(&ExactScalar::real(c)));
        }
        s.insert(vec![mu], acc);
    }
    s
}

fn burnside_cache() -> &'static RwLock<Option<(usize, i32, PSeries<LambdaSeries>)>> {
    static C: OnceLock<RwLock<Option<(usize, i32, PSeries<LambdaSeries>)>>> = OnceLock::new();
    C.get_or_init(|| RwLock::new(None))
}

/// Connected series Φ(λ; p) through weight `cap` and `λ^l`, memoized.
pub fn burnside_connected(cap: usize, l: i32) -> Result<PSeries<LambdaSeries>> {
    if let Some((c, t, s)) = burnside_cache().read().unwrap().as_ref() {
        if *c >= cap && *t >= l {
            return Ok(s.with_cap(cap).map(|_, x| x.truncate(l)));
        }
    }
    let s = burnside_disconnected(cap, l).log()?;
    let mut w = burnside_cache().write().unwrap();
    let bigger = w.as_ref().is_none_or(|(c, t, _)| *c <= cap && *t <= l);
    if bigger {
        *w = Some((cap, l, s.clone()));
    }
    Ok(s)
}

/// Φ_μ(λ) = Σ_g H_{g,μ} λ^r / r! through `λ^l`.
pub fn burnside_phi(mu: &Partition, l: i32) -> Result<LambdaSeries> {
    if mu.is_empty() {
        return Err(Error::Invalid("Φ_μ needs |μ| ≥ 1".into()));
    }
    if (l as i64) <= branch_points(0, mu) {
        return Err(Error::Truncation(format!("λ^{l} holds no genus term for {mu}")));
    }
    let s = burnside_connected(mu.size(), l)?;
    Ok(s.coeff(&[mu.clone()]))
}

/// Which algorithm produced a Hurwitz number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Burnside,
    CutJoin,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "burnside" => Ok(Method::Burnside),
            "cutjoin" => Ok(Method::CutJoin),
            _ => Err(Error::Invalid(format!("unknown method {s:?}"))),
        }
    }
}

/// Solves ∂Φ/∂λ = CJ(Φ), Φ(0) = p_1, degree by degree in λ, returning
/// Φ_s (the λ^s coefficient) for s ≤ smax.
pub fn cutjoin_layers(cap: usize, smax: usize) -> Result<Vec<PSeries<Q>>> {
    let mut layers: Vec<PSeries<Q>> = vec![PSeries::p(1, cap, 0, 1)];
    for s in 0..smax {
        // [λ^s] CJ(Φ) = CJ_lin Φ_s + Σ_{a+b=s} quadratic(Φ_a, Φ_b)
        let mut rhs = layers[s].cut_join_linear(0);
        for a in 0..=s {
            let quad = PSeries::cut_join_quadratic(&layers[a], &layers[s - a], 0)?;
            rhs = rhs.add(&quad)?;
        }
        layers.push(rhs.scale_q(&(Q::one() / q(s as i64 + 1))));
    }
    Ok(layers)
}

/// H_{g,μ}.
pub fn hurwitz_number(g: usize, mu: &Partition, method: Method) -> Result<Q> {
    if mu.is_empty() {
        return Err(Error::Invalid("empty ramification profile".into()));
    }
    let r = branch_points(g, mu);
    match method {
        Method::Burnside => {
            let phi = burnside_phi(mu, r as i32 + 1)?;
            Ok(scalar_real(&phi.coeff(r as i32))? * qn(factorial(r as usize)))
        }
        Method::CutJoin => {
            if r < 0 {
                return Ok(if *mu == Partition::single(1) && g == 0 { Q::one() } else { Q::zero() });
            }
            let layers = cutjoin_layers(mu.size(), r as usize)?;
            Ok(layers[r as usize].coeff(&[mu.clone()]) * qn(factorial(r as usize)))
        }
    }
}

fn scalar_real(t: &TauLaurent) -> Result<Q> {
    if t.is_zero() {
        return Ok(Q::zero());
    }
    let c = t.coeff(0);
    if t.min_exp() != Some(0) || t.max_exp() != Some(0) || !c.is_real() {
        return Err(Error::Inconsistency(format!("expected a rational constant, got {t}")));
    }
    Ok(c.re)
}

/// H_{g,μ} for every |μ| ≤ `max_size`, g ≤ `max_genus`, by both methods.
#[derive(Debug, Clone, Default)]
pub struct HurwitzTable {
    pub entries: BTreeMap<(usize, Partition), BTreeMap<Method, Q>>,
}

impl HurwitzTable {
    pub fn build(max_size: usize, max_genus: usize) -> Result<Self> {
        let rmax = 2 * max_genus + 2 * max_size - 2;
        let burn = burnside_connected(max_size, rmax as i32 + 1)?;
        let layers = cutjoin_layers(max_size, rmax)?;
        let mut entries = BTreeMap::new();
        for mu in partitions_up_to(max_size).into_iter().skip(1) {
            for g in 0..=max_genus {
                let r = branch_points(g, &mu);
                let mut m = BTreeMap::new();
                if r >= 0 {
                    let f = qn(factorial(r as usize));
                    m.insert(Method::Burnside, scalar_real(&burn.coeff(&[mu.clone()]).coeff(r as i32))? * &f);
                    m.insert(Method::CutJoin, layers[r as usize].coeff(&[mu.clone()]) * &f);
                }
                entries.insert((g, mu.clone()), m);
            }
        }
        Ok(HurwitzTable { entries })
    }
    /// Every entry where both methods ran agrees, and all values are ≥ 0.
    pub fn consistent(&self) -> bool {
        self.entries.values().all(|m| {
            let vals: Vec<&Q> = m.values().collect();
            vals.windows(2).all(|w| w[0] == w[1]) && vals.iter().all(|v| !v.is_negative())
        })
    }
}

/// Σ_η χ_η(μ)/z_μ · χ_η(ν)/z_ν · e^{κ_η λ/2} through `λ^l`.
pub fn double_hurwitz(mu: &Partition, nu: &Partition, l: i32) -> Result<LambdaSeries> {
    if mu.size() != nu.size() {
        return Err(Error::SizeMismatch(format!("|{mu}| != |{nu}|")));
    }
    let zz = qn(mu.z()) * qn(nu.z());
    let mut acc = LambdaSeries::zero(l);
    for eta in enumerate_partitions(mu.size()) {
        let c = q(character(&eta, mu)? * character(&eta, nu)?) / &zz;
        if c.is_zero() {
            continue;
        }
        acc = acc.add(&exp_linear(&(q(eta.kappa()) / q(2)), l).scale(&ExactScalar::real(c)));
    }
    Ok(acc)
}

/// I_{g,μ} together with the bare integral ∫ Λ^∨_g(1)/∏(1 − μ_iψ_i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeIValue {
    pub g: usize,
    pub mu: Partition,
    pub value: Q,
    pub bare: Q,
}

/// ∏ μ_i!/μ_i^{μ_i} · |Aut μ|, the factor converting I_{g,μ} to the bare integral.
pub fn elsv_factor(mu: &Partition) -> Q {
    let mut f = qn(mu.aut());
    for &m in mu.parts() {
        f *= qn(factorial(m));
        f /= qn((m as u128).pow(m as u32));
    }
    f
}

pub fn elsv_i(g: usize, mu: &Partition) -> Result<HodgeIValue> {
    let r = branch_points(g, mu);
    if r < 0 {
        return Err(Error::Invalid(format!("unstable pair ({g}, {mu})")));
    }
    let h = hurwitz_number(g, mu, Method::Burnside)?;
    let value = h / qn(factorial(r as usize));
    let bare = &value * elsv_factor(mu);
    Ok(HodgeIValue { g, mu: mu.clone(), value, bare })
}

/// Bare Hodge integrals for many (g, μ) from one connected Burnside table.
struct BareTable {
    cap: usize,
    series: PSeries<LambdaSeries>,
}

impl BareTable {
    fn new(cap: usize, gmax: usize) -> Result<Self> {
        let l = (2 * gmax + 2 * cap) as i32;
        Ok(BareTable { cap, series: burnside_connected(cap, l)? })
    }
    fn bare(&self, g: usize, mu: &Partition) -> Result<Q> {
        debug_assert!(mu.size() <= self.cap);
        let r = branch_points(g, mu);
        let c = scalar_real(&self.series.coeff(&[mu.clone()]).coeff(r as i32))?;
        Ok(c * elsv_factor(mu))
    }
}

/// All exponent vectors in `n` variables of total degree ≤ `d`.
fn monomials(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    fn rec(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

fn interpolation_cache() -> &'static RwLock<HashMap<(usize, usize), Vec<(Vec<usize>, Q)>>> {
    static C: OnceLock<RwLock<HashMap<(usize, usize), Vec<(Vec<usize>, Q)>>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// Coefficients of P(μ_1,…,μ_n) = ∫ Λ^∨_g(1)/∏(1 − μ_iψ_i) in the monomial basis.
///
/// P has total degree 3g − 3 + n. It is sampled at the lower set
/// {μ_i ≥ 1, Σ(μ_i − 1) ≤ 3g − 3 + n}, which is unisolvent for that degree.
/// Points with repeated parts are allowed; the bare integral is symmetric so
/// the point is sorted into a partition and |Aut μ| is carried by
/// [`elsv_factor`].
pub fn bare_polynomial(g: usize, n: usize) -> Result<Vec<(Vec<usize>, Q)>> {
    if let Some(v) = interpolation_cache().read().unwrap().get(&(g, n)) {
        return Ok(v.clone());
    }
    if n == 0 || 2 * g + n < 3 {
        return Err(Error::Invalid(format!("unstable (g, n) = ({g}, {n})")));
    }
    let d = 3 * g + n - 3;
    let mons = monomials(n, d);
    let pts: Vec<Vec<usize>> = mons.iter().map(|m| m.iter().map(|e| e + 1).collect()).collect();
    let table = BareTable::new(d + n, g)?;
    let mut a = Vec::with_capacity(pts.len());
    let mut b = Vec::with_capacity(pts.len());
    for pt in &pts {
        let row: Vec<Q> = mons
            .iter()
            .map(|m| {
                let mut v = Q::one();
                for (x, e) in pt.iter().zip(m) {
                    v *= qn((*x as u128).pow(*e as u32));
                }
                v
            })
            .collect();
        a.push(row);
        b.push(table.bare(g, &Partition::new(pt.clone()))?);
    }
    let coeffs = linalg::solve(a, b)?;
    let out: Vec<(Vec<usize>, Q)> = mons.into_iter().zip(coeffs).collect();
    interpolation_cache().write().unwrap().insert((g, n), out.clone());
    Ok(out)
}

/// ⟨τ_{k_1}⋯τ_{k_n}⟩_g as the top-degree coefficient of the bare Hodge polynomial.
pub fn psi_from_asymptotics(g: usize, k: &[usize]) -> Result<Q> {
    let n = k.len();
    if n == 0 {
        return Err(Error::Invalid("need at least one marked point".into()));
    }
    if k.iter().sum::<usize>() + 3 != 3 * g + n {
        return Err(Error::Invalid(format!("dimension constraint fails for g={g}, k={k:?}")));
    }
    let poly = bare_polynomial(g, n)?;
    Ok(poly.into_iter().find(|(m, _)| m == k).map(|(_, c)| c).unwrap_or_else(Q::zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qf;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn small_hurwitz_numbers() {
        for m in [Method::Burnside, Method::CutJoin] {
            assert_eq!(hurwitz_number(0, &p(&[1]), m).unwrap(), q(1));
            assert_eq!(hurwitz_number(0, &p(&[2]), m).unwrap(), qf(1, 2));
            assert_eq!(hurwitz_number(1, &p(&[1]), m).unwrap(), q(0));
            assert_eq!(hurwitz_number(2, &p(&[1]), m).unwrap(), q(0));
        }
    }

    #[test]
    fn phi_coefficients() {
        let a = burnside_phi(&p(&[1]), 4).unwrap();
        assert_eq!(a.coeff(0), TauLaurent::one());
        assert!(a.coeff(2).is_zero());
        let b = burnside_phi(&p(&[2]), 3).unwrap();
        assert_eq!(b.coeff(1), TauLaurent::constant(ExactScalar::real(qf(1, 2))));
        assert!(burnside_phi(&p(&[2]), 1).is_err());
    }

    #[test]
    fn double_hurwitz_small() {
        let a = double_hurwitz(&p(&[1]), &p(&[1]), 5).unwrap();
        assert!(a.agrees_with(&LambdaSeries::one(5)));
        let b = double_hurwitz(&p(&[2]), &p(&[1, 1]), 6).unwrap();
        assert!(b.coeff(0).is_zero() && b.coeff(2).is_zero() && !b.coeff(1).is_zero());
        assert!(double_hurwitz(&p(&[2]), &p(&[1]), 3).is_err());
    }

    #[test]
    fn genus_zero_three_points() {
        assert_eq!(elsv_i(0, &p(&[1, 1, 1])).unwrap().bare, q(1));
        assert_eq!(elsv_i(0, &p(&[1])).unwrap().value, q(1));
        assert_eq!(elsv_i(0, &p(&[3, 2, 1])).unwrap().bare, q(1));
    }

    #[test]
    fn psi_small() {
        assert_eq!(psi_from_asymptotics(0, &[0, 0, 0]).unwrap(), q(1));
        assert_eq!(psi_from_asymptotics(1, &[1]).unwrap(), qf(1, 24));
        assert_eq!(psi_from_asymptotics(0, &[1, 0, 0, 0]).unwrap(), q(1));
        assert!(psi_from_asymptotics(0, &[1, 0, 0]).is_err());
    }
}
