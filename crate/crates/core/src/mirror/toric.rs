use crate::error::{Error, Result};
use crate::exact::{q, NilpotentPoly, Ring};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Cohomology generator with x^order = 0.
#[derive(Debug, Clone, Deserialize)]
pub struct Generator {
    pub name: String,
    pub order: i32,
}

/// A class given by integer coefficients on the generators, and its
/// pairings ⟨·, e_j⟩ with the degree basis.
#[derive(Debug, Clone, Deserialize)]
pub struct Class {
    pub class: Vec<i64>,
    pub pairing: Vec<i64>,
}

/// Input for [`toric_b_series`]; degrees range over d ∈ ℤ_{≥0}^r with Σd_j ≤ d_max.
#[derive(Debug, Clone, Deserialize)]
pub struct ToricSpec {
    pub generators: Vec<Generator>,
    /// H_j in H·t = Σ_j H_j t_j, one row per Kähler parameter.
    pub kahler: Vec<Vec<i64>>,
    /// T-invariant divisors D_a.
    pub divisors: Vec<Class>,
    /// Summands L_i of V, each with c₁(L_i) ≥ 0.
    pub bundles: Vec<Class>,
}

impl ToricSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        let spec: ToricSpec = serde_json::from_str(s).map_err(|e| Error::Invalid(format!("toric spec: {e}")))?;
        let g = spec.generators.len();
        let r = spec.kahler.len();
        let bad = spec.kahler.iter().any(|k| k.len() != g)
            || spec.divisors.iter().chain(&spec.bundles).any(|c| c.class.len() != g || c.pairing.len() != r);
        if bad {
            return Err(Error::Invalid("toric spec: inconsistent vector lengths".into()));
        }
        Ok(spec)
    }
}

/// B(t) by multidegree; the ring has the generators followed by t_1..t_r.
#[derive(Debug, Clone)]
pub struct CohomSeries {
    pub ring: Arc<Ring>,
    pub coeffs: BTreeMap<Vec<usize>, NilpotentPoly>,
}

fn degrees(r: usize, d_max: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..=d_max {
        for mut rest in degrees(r - 1, d_max - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// e^{−H·t} Σ_d ∏_i∏_{k=0}^{⟨L_i,d⟩}(L_i−k) ∏_{⟨D,d⟩<0}∏_{k=0}^{−⟨D,d⟩−1}(D+k)
/// / ∏_{⟨D,d⟩≥0}∏_{k=1}^{⟨D,d⟩}(D−k) e^{d·t}.
pub fn toric_b_series(spec: &ToricSpec, d_max: usize) -> Result<CohomSeries> {
    let mut vars: Vec<(String, Option<i32>)> = spec.generators.iter().map(|g| (g.name.clone(), Some(g.order))).collect();
    let r = spec.kahler.len();
    for j in 0..r {
        vars.push((format!("t{}", j + 1), None));
    }
    let refs: Vec<(&str, Option<i32>)> = vars.iter().map(|(n, o)| (n.as_str(), *o)).collect();
    let ring = Ring::new(&refs);
    let class = |c: &[i64]| {
        c.iter().zip(&spec.generators).fold(NilpotentPoly::zero(&ring), |acc, (a, g)| {
            acc.add(&NilpotentPoly::var(&ring, &g.name, 1).scale(&q(*a)))
        })
    };
    let konst = |k: i64| NilpotentPoly::constant(&ring, q(k));
    let mut ht = NilpotentPoly::zero(&ring);
    for (j, row) in spec.kahler.iter().enumerate() {
        ht = ht.add(&class(row).mul(&NilpotentPoly::var(&ring, &format!("t{}", j + 1), 1)));
    }
    let prefactor = ht.neg().exp()?;
    let pair = |c: &Class, d: &[usize]| c.pairing.iter().zip(d).map(|(p, x)| p * *x as i64).sum::<i64>();
    let mut coeffs = BTreeMap::new();
    for d in degrees(r, d_max) {
        let mut num = NilpotentPoly::one(&ring);
        let mut den = NilpotentPoly::one(&ring);
        for l in &spec.bundles {
            let e = pair(l, &d);
            if e < 0 {
                return Err(Error::Precondition(format!("⟨c₁(L), d⟩ = {e} < 0 at d = {d:?}; only the convex case is supported")));
            }
            let c1 = class(&l.class);
            for k in 0..=e {
                num = num.mul(&c1.sub(&konst(k)));
            }
        }
        for dv in &spec.divisors {
            let e = pair(dv, &d);
            let c = class(&dv.class);
            if e < 0 {
                for k in 0..-e {
                    num = num.mul(&c.add(&konst(k)));
                }
            } else {
                for k in 1..=e {
                    den = den.mul(&c.sub(&konst(k)));
                }
            }
        }
        coeffs.insert(d, prefactor.mul(&num).mul(&den.inv()?));
    }
    Ok(CohomSeries { ring, coeffs })
}

/// The quintic: P⁴ with V = O(5).
pub const QUINTIC_SPEC: &str = r#"{
  "generators": [{"name": "H", "order": 5}],
  "kahler": [[1]],
  "divisors": [
    {"class": [1], "pairing": [1]}, {"class": [1], "pairing": [1]}, {"class": [1], "pairing": [1]},
    {"class": [1], "pairing": [1]}, {"class": [1], "pairing": [1]}
  ],
  "bundles": [{"class": [5], "pairing": [5]}]
}"#;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mirror::quintic::quintic_term;
    use num_traits::Zero;

    #[test]
    fn p1_with_o2() {
        let spec = ToricSpec::from_json(
            r#"{"generators":[{"name":"H","order":2}],"kahler":[[1]],
                "divisors":[{"class":[1],"pairing":[1]},{"class":[1],"pairing":[1]}],
                "bundles":[{"class":[2],"pairing":[2]}]}"#,
        )
        .unwrap();
        let b = toric_b_series(&spec, 1).unwrap();
        // d=1: 2H(2H−1)(2H−2)/(H−1)² = 4H mod H², times e^{−Ht} = 1 − Ht
        let c = &b.coeffs[&vec![1]];
        assert_eq!(c.coeff(&[1, 0]), q(4));
        assert_eq!(c.coeff(&[0, 0]), crate::exact::Q::zero());
        assert_eq!(c.len(), 1);
        // d=0 keeps the k=0 factor: e(V) = 2H
        assert_eq!(b.coeffs[&vec![0]].coeff(&[1, 0]), q(2));
        assert_eq!(b.coeffs[&vec![0]].len(), 1);
    }

    #[test]
    fn quintic_specialization() {
        let spec = ToricSpec::from_json(QUINTIC_SPEC).unwrap();
        let b = toric_b_series(&spec, 3).unwrap();
        let ring = &b.ring;
        let h = NilpotentPoly::var(ring, "H", 1);
        let pre = h.mul(&NilpotentPoly::var(ring, "t1", 1)).neg().exp().unwrap();
        for d in 0..=3usize {
            // B(H) = −c_d(−H) e^{−Ht}
            let c = quintic_term(d).unwrap();
            let mut want = NilpotentPoly::zero(ring);
            for (i, x) in c.iter().enumerate() {
                let sign = if i % 2 == 0 { -q(1) } else { q(1) };
                want = want.add(&h.pow(i as u32).scale(&(x * sign)));
            }
            assert_eq!(b.coeffs[&vec![d]], pre.mul(&want), "d={d}");
        }
    }
}
