//! Pieri's rule for `ind_{S_n × S_{m-n}}^{S_m}(V_ν ⊠ trivial)` and the
//! decompositions of the projective families `P(W_n)`.

use std::collections::BTreeSet;

use crate::characters::IrrDecomposition;
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Partitions `μ ⊢ m` obtained from `ν` by adding `m - |ν|` boxes, no two in
/// the same column. Returned in reverse-lexicographic order; each occurs with
/// multiplicity one in the induced module.
pub fn pieri_expand(nu: &Partition, m: usize) -> Result<Vec<Partition>> {
    let n = nu.size();
    if m < n {
        return Err(Error::Precondition(format!(
            "cannot add boxes to reach {m} from a partition of {n}"
        )));
    }
    let mut out = Vec::new();
    let mut rows = Vec::with_capacity(nu.len() + 1);
    add_strip(nu.parts(), 0, m - n, &mut rows, &mut out);
    Ok(out)
}

/// Row `i` may grow from `ν_i` up to `ν_{i-1}` (unbounded for the first row);
/// one extra row of length at most `ν_ℓ` may be appended.
fn add_strip(
    nu: &[usize],
    row: usize,
    boxes: usize,
    rows: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if row == nu.len() + 1 {
        if boxes == 0 {
            let parts = rows.iter().copied().filter(|&p| p > 0).collect();
            out.push(Partition::new(parts).expect("horizontal strips keep rows decreasing"));
        }
        return;
    }
    let base = nu.get(row).copied().unwrap_or(0);
    let room = if row == 0 { boxes } else { nu[row - 1] - base };
    for extra in (0..=room.min(boxes)).rev() {
        rows.push(base + extra);
        add_strip(nu, row + 1, boxes - extra, rows, out);
        rows.pop();
    }
}

/// Terms at degree `m` of `P(W_n)`, for `W_n` given by its decomposition:
/// zero below `n`, otherwise the Pieri expansions of its factors summed with
/// multiplicity.
pub fn projective_terms(w: &IrrDecomposition, m: usize) -> IrrDecomposition {
    let n = w.degree();
    let mut out = IrrDecomposition::zero(m);
    if m < n {
        return out;
    }
    for (nu, mult) in w.factors() {
        for mu in pieri_expand(nu, m).expect("m >= n") {
            out.add_factor(mu, mult).expect("Pieri output has degree m");
        }
    }
    out
}

/// `P_ν`: the socles of the factors of `P(V_ν)` at `m₀ = |ν| + ν_1`, after
/// which the socle set no longer changes.
pub fn stable_socle_set(nu: &Partition) -> Result<BTreeSet<Partition>> {
    if nu.is_empty() {
        return Err(Error::InvalidPartition(
            "stable socle set of the empty partition".into(),
        ));
    }
    Ok(pieri_expand(nu, nu.min_pad_degree())?
        .iter()
        .map(Partition::socle)
        .collect())
}

/// `rank_RS(P(V_λ)) = |λ| + λ_1`
pub fn rank_rs_projective(lambda: &Partition) -> Result<usize> {
    if lambda.is_empty() {
        return Err(Error::InvalidPartition(
            "projective rank of the empty partition".into(),
        ));
    }
    Ok(lambda.min_pad_degree())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn worked_example() {
        let nu = p(&[3, 2, 2]);
        assert_eq!(
            pieri_expand(&nu, 8).unwrap(),
            vec![p(&[4, 2, 2]), p(&[3, 3, 2]), p(&[3, 2, 2, 1])]
        );
        assert_eq!(pieri_expand(&nu, 10).unwrap().len(), 6);
        assert_eq!(pieri_expand(&nu, 7).unwrap(), vec![nu.clone()]);
        assert!(pieri_expand(&nu, 6).is_err());
    }

    #[test]
    fn one_box() {
        assert_eq!(
            pieri_expand(&p(&[1]), 3).unwrap(),
            vec![p(&[3]), p(&[2, 1])]
        );
        assert_eq!(pieri_expand(&Partition::empty(), 3).unwrap(), vec![p(&[3])]);
    }

    #[test]
    fn projective_terms_small() {
        let w = IrrDecomposition::single(p(&[1]));
        assert_eq!(
            projective_terms(&w, 2),
            IrrDecomposition::from_pairs(2, [(p(&[2]), 1), (p(&[1, 1]), 1)]).unwrap()
        );
        assert_eq!(projective_terms(&w, 1), w);
        assert!(projective_terms(&w, 0).is_zero());
        let w = IrrDecomposition::single(p(&[3, 2, 2]));
        assert_eq!(projective_terms(&w, 10).distinct(), 6);
        let doubled = w.scaled(2);
        assert_eq!(
            projective_terms(&doubled, 8).multiplicity(&p(&[3, 3, 2])),
            2
        );
    }

    #[test]
    fn stable_socles() {
        let expected: BTreeSet<_> = [Partition::empty(), p(&[1])].into_iter().collect();
        assert_eq!(stable_socle_set(&p(&[1])).unwrap(), expected);
        let rows = stable_socle_set(&p(&[3])).unwrap();
        assert!(rows.contains(&Partition::empty()));
        assert!(rows.contains(&p(&[3])));
        assert!(stable_socle_set(&Partition::empty()).is_err());
    }

    #[test]
    fn projective_ranks() {
        assert_eq!(rank_rs_projective(&p(&[1])).unwrap(), 2);
        assert_eq!(rank_rs_projective(&p(&[3, 2, 2])).unwrap(), 10);
        for k in 1..6 {
            assert_eq!(rank_rs_projective(&Partition::row(k)).unwrap(), 2 * k);
        }
    }
}
