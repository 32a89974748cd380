//! Recovering a standardized {±1}-matrix from `(n−1)²` contributor signs of `𝒜_id`.
//!
//! The probes, all with the identity tail map and every other vertex a backstep:
//!
//! * `s1k[k]`: the digon `(1 k)`, whose circle reads `h₁₁ h_k1 h_kk h₁k`;
//! * `skl[k, ℓ]`: the digon `(k ℓ)`, reading `h_kk h_ℓk h_ℓℓ h_kℓ`;
//! * `s1kl[k, ℓ]`: the triangle `v₁ → v_ℓ → v_k → v₁`, which leaves `v_ℓ`
//!   through `e_ℓ` and `v_k` through `e_k`, so it reads
//!   `h₁₁ h_ℓ1 h_ℓℓ h_kℓ h_kk h₁k` and pins down the upper entry `h_kℓ`.
//!
//! With a single non-backstep cycle of sign `ε` a contributor has sign `−ε`,
//! which gives, for a standardized matrix,
//!
//! * `h_kk = −s1k[k]`
//! * `h_kℓ = s1kl[k, ℓ] · s1k[k] · s1k[ℓ]`
//! * `h_ℓk = −s1kl[k, ℓ] · skl[k, ℓ]`
//!
//! applied in that order: diagonal, upper triangle, lower triangle.

use serde::{Deserialize, Serialize};

use crate::contributor::{contributor_sign, Contributor, TailClassId};
use crate::error::{Error, Result};
use crate::incidence::IncidenceStructure;
use crate::permutation::Permutation;

/// One probe contributor of `𝒜_id`, 0-based indices with `0 < k < l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Probe {
    /// Transposition `(1 k)`.
    DigonWithFirst(usize),
    /// Transposition `(k ℓ)`.
    Digon(usize, usize),
    /// The 3-cycle sending `1 → ℓ → k → 1`.
    Triangle(usize, usize),
}

impl Probe {
    pub fn permutation(self, n: usize) -> Permutation {
        match self {
            Probe::DigonWithFirst(k) => Permutation::transposition(n, 0, k),
            Probe::Digon(k, l) => Permutation::transposition(n, k, l),
            Probe::Triangle(k, l) => Permutation::from_cycles(n, &[vec![0, l, k]])
                .expect("distinct points"),
        }
    }
}

/// Probe signs, 1-based indices in every field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignProbe {
    pub n: usize,
    /// Signs for `k = 2..=n`.
    pub s1k: Vec<i8>,
    /// `[k, ℓ, sign]` for `2 ≤ k < ℓ ≤ n`, lexicographic.
    pub skl: Vec<(usize, usize, i8)>,
    /// `[k, ℓ, sign]` for `2 ≤ k < ℓ ≤ n`, lexicographic.
    pub s1kl: Vec<(usize, usize, i8)>,
}

fn upper_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(move |k| (k + 1..n).map(move |l| (k, l)))
}

impl SignProbe {
    pub fn len(&self) -> usize {
        self.s1k.len() + self.skl.len() + self.s1kl.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let p: SignProbe = serde_json::from_str(text)?;
        p.validate()?;
        Ok(p)
    }

    /// Every sign is ±1 and every index pair appears once, in order.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        if n == 0 {
            return Err(Error::InvalidProbe("n must be at least 1".into()));
        }
        if self.s1k.len() != n - 1 {
            return Err(Error::InvalidProbe(format!(
                "s1k has {} signs, expected {}",
                self.s1k.len(),
                n - 1
            )));
        }
        let expected: Vec<(usize, usize)> = upper_pairs(n).map(|(k, l)| (k + 1, l + 1)).collect();
        for (name, list) in [("skl", &self.skl), ("s1kl", &self.s1kl)] {
            let pairs: Vec<(usize, usize)> = list.iter().map(|&(k, l, _)| (k, l)).collect();
            if pairs != expected {
                return Err(Error::InvalidProbe(format!(
                    "{name} must list every pair 2 <= k < l <= {n} once in lexicographic order"
                )));
            }
        }
        let signs = self
            .s1k
            .iter()
            .chain(self.skl.iter().map(|x| &x.2))
            .chain(self.s1kl.iter().map(|x| &x.2));
        for &s in signs {
            if s != 1 && s != -1 {
                return Err(Error::InvalidProbe(format!("sign {s} is not ±1")));
            }
        }
        Ok(())
    }

    /// All probes set to the same sign.
    pub fn uniform(n: usize, sign: i8) -> Self {
        Self {
            n,
            s1k: vec![sign; n.saturating_sub(1)],
            skl: upper_pairs(n).map(|(k, l)| (k + 1, l + 1, sign)).collect(),
            s1kl: upper_pairs(n).map(|(k, l)| (k + 1, l + 1, sign)).collect(),
        }
    }
}

fn probe_sign(h: &IncidenceStructure, probe: Probe) -> Result<i8> {
    let n = h.dim();
    let c = Contributor::new(TailClassId::from_identifier(&Permutation::identity(n)), probe.permutation(n))?;
    Ok(contributor_sign(h, &c)?.sign)
}

pub fn probe_signs(h: &IncidenceStructure) -> Result<SignProbe> {
    let n = h.require_full()?;
    if !h.is_standardized() {
        return Err(Error::NotStandardized);
    }
    let s1k = (1..n)
        .map(|k| probe_sign(h, Probe::DigonWithFirst(k)))
        .collect::<Result<_>>()?;
    let skl = upper_pairs(n)
        .map(|(k, l)| Ok((k + 1, l + 1, probe_sign(h, Probe::Digon(k, l))?)))
        .collect::<Result<_>>()?;
    let s1kl = upper_pairs(n)
        .map(|(k, l)| Ok((k + 1, l + 1, probe_sign(h, Probe::Triangle(k, l))?)))
        .collect::<Result<_>>()?;
    Ok(SignProbe { n, s1k, skl, s1kl })
}

pub fn reconstruct(p: &SignProbe) -> Result<IncidenceStructure> {
    p.validate()?;
    let n = p.n;
    let mut h = IncidenceStructure::constant(n, 1);
    // s1k[k - 1] is the probe for 0-based vertex k.
    let diag = |k: usize| p.s1k[k - 1];
    for k in 1..n {
        h.set_entry(k, k, -diag(k));
    }
    for ((&(k, l, triangle), &(_, _, digon)), _) in p.s1kl.iter().zip(&p.skl).zip(upper_pairs(n)) {
        let (k, l) = (k - 1, l - 1);
        h.set_entry(k, l, triangle * diag(k) * diag(l));
        h.set_entry(l, k, -triangle * digon);
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample3() -> IncidenceStructure {
        "1 1 1\n1 -1 1\n1 1 -1".parse().unwrap()
    }

    #[test]
    fn probe_of_fixture() {
        let p = probe_signs(&sample3()).unwrap();
        assert_eq!(p.s1k, vec![1, 1]);
        assert_eq!(p.skl, vec![(2, 3, -1)]);
        assert_eq!(p.s1kl, vec![(2, 3, 1)]);
        assert_eq!(p.len(), 4);
        assert_eq!(reconstruct(&p).unwrap(), sample3());
    }

    #[test]
    fn probe_of_all_ones() {
        let p = probe_signs(&IncidenceStructure::constant(3, 1)).unwrap();
        assert_eq!(p.s1k, vec![-1, -1]);
        assert_eq!(p.skl, vec![(2, 3, -1)]);
        assert_eq!(p.s1kl, vec![(2, 3, 1)]);
        assert_eq!(reconstruct(&p).unwrap(), IncidenceStructure::constant(3, 1));
    }

    #[test]
    fn two_by_two() {
        let h: IncidenceStructure = "1 1\n1 -1".parse().unwrap();
        let p = probe_signs(&h).unwrap();
        assert_eq!(p.s1k, vec![1]);
        assert!(p.skl.is_empty() && p.s1kl.is_empty());
        let p = SignProbe { n: 2, s1k: vec![1], skl: vec![], s1kl: vec![] };
        assert_eq!(reconstruct(&p).unwrap(), h);
    }

    #[test]
    fn asymmetric_matrix_round_trips() {
        let h: IncidenceStructure = "1 1 1\n1 1 -1\n1 1 1".parse().unwrap();
        let p = probe_signs(&h).unwrap();
        assert_eq!(reconstruct(&p).unwrap(), h);
    }

    #[test]
    fn requires_standardized_input() {
        let h: IncidenceStructure = "-1 1\n1 1".parse().unwrap();
        assert!(matches!(probe_signs(&h), Err(Error::NotStandardized)));
    }

    #[test]
    fn json_shape_and_validation() {
        let p = probe_signs(&sample3()).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"n":3,"s1k":[1,1],"skl":[[2,3,-1]],"s1kl":[[2,3,1]]}"#);
        assert_eq!(SignProbe::from_json(&json).unwrap(), p);
        assert!(SignProbe::from_json(r#"{"n":3,"s1k":[1],"skl":[[2,3,-1]],"s1kl":[[2,3,1]]}"#).is_err());
        assert!(SignProbe::from_json(r#"{"n":3,"s1k":[1,1],"skl":[[2,3,0]],"s1kl":[[2,3,1]]}"#).is_err());
        assert!(SignProbe::from_json(r#"{"n":3,"s1k":[1,1],"skl":[],"s1kl":[[2,3,1]]}"#).is_err());
    }

    #[test]
    fn uniform_probes() {
        let p = SignProbe::uniform(4, -1);
        assert_eq!(p.len(), 9);
        p.validate().unwrap();
        let h = reconstruct(&SignProbe::uniform(3, -1)).unwrap();
        assert_eq!(h.to_rows(), vec![vec![1, 1, 1], vec![1, 1, -1], vec![1, -1, 1]]);
    }
}
