use super::{characteristic_of_poset, FactorPoset};
use crate::error::{FrameError, Result};

/// Largest ground set accepted by [`strongly_isomorphic`].
pub const ISO_CAP: usize = 12;

/// Finds a permutation `η` of the ground set with `η(P) = Q`, if one exists.
///
/// Returns `η` as a 0-based index map (`η[i]` is the image of `i`). Posets on
/// ground sets of different sizes are never strongly isomorphic. Candidates
/// for each index are restricted to indices with the same characteristic value
/// and the same multiset of member sizes through them; partial assignments are
/// pruned as soon as a member whose indices are all assigned maps outside `Q`.
pub fn strongly_isomorphic(p: &FactorPoset, q: &FactorPoset) -> Result<Option<Vec<usize>>> {
    if p.ground() != q.ground() {
        return Ok(None);
    }
    let k = p.ground();
    if k > ISO_CAP {
        return Err(FrameError::GroundSetTooLarge { k, cap: ISO_CAP });
    }
    if p.len() != q.len() {
        return Ok(None);
    }
    let mut sizes_p: Vec<usize> = p.members().iter().map(|m| m.len()).collect();
    let mut sizes_q: Vec<usize> = q.members().iter().map(|m| m.len()).collect();
    sizes_p.sort_unstable();
    sizes_q.sort_unstable();
    if sizes_p != sizes_q {
        return Ok(None);
    }

    let sig_p = signatures(p);
    let sig_q = signatures(q);
    let mut by_max: Vec<Vec<super::IndexSet>> = vec![Vec::new(); k];
    for m in p.nonempty_members() {
        by_max[m.max_index().expect("nonempty")].push(m);
    }

    let mut perm = vec![usize::MAX; k];
    let mut used = vec![false; k];
    if assign(0, &mut perm, &mut used, &sig_p, &sig_q, &by_max, q) {
        Ok(Some(perm))
    } else {
        Ok(None)
    }
}

type Signature = (usize, Vec<usize>);

fn signatures(poset: &FactorPoset) -> Vec<Signature> {
    let chi = characteristic_of_poset(poset);
    (0..poset.ground())
        .map(|i| {
            let mut sizes: Vec<usize> = poset.members().iter().filter(|m| m.contains(i)).map(|m| m.len()).collect();
            sizes.sort_unstable();
            (chi.counts[i], sizes)
        })
        .collect()
}

fn assign(
    i: usize,
    perm: &mut [usize],
    used: &mut [bool],
    sig_p: &[Signature],
    sig_q: &[Signature],
    by_max: &[Vec<super::IndexSet>],
    q: &FactorPoset,
) -> bool {
    if i == perm.len() {
        return true;
    }
    for j in 0..perm.len() {
        if used[j] || sig_p[i] != sig_q[j] {
            continue;
        }
        perm[i] = j;
        if by_max[i].iter().all(|m| q.contains(m.permuted(perm))) {
            used[j] = true;
            if assign(i + 1, perm, used, sig_p, sig_q, by_max, q) {
                return true;
            }
            used[j] = false;
        }
    }
    perm[i] = usize::MAX;
    false
}
