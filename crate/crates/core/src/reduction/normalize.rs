//! Palette permutations used to put a coloring into the canonical form a
//! lifting recipe is written in, and to map the result back.

use thiserror::Error;

use crate::plane_graph::VertexId;
use crate::set_coloring::{ColorSet, SetColoring};

/// `perm[c - 1]` is the image of color `c`.
pub type Permutation = Vec<u32>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NormalizeError {
    #[error("vertex {0} is not colored")]
    Uncolored(VertexId),
    #[error("no palette permutation reaches the requested form")]
    Unreachable,
}

pub fn identity(palette: u32) -> Permutation {
    (1..=palette).collect()
}

pub fn invert(perm: &[u32]) -> Permutation {
    let mut inv = vec![0; perm.len()];
    for (i, &img) in perm.iter().enumerate() {
        inv[(img - 1) as usize] = i as u32 + 1;
    }
    inv
}

/// Renames colors so that the pinned vertices, read in order, use the
/// smallest colors: the colors of the first pinned vertex become `1..k` in
/// increasing order, new colors of the next one continue from `k + 1`, and
/// the remaining colors keep their relative order.
pub fn color_permutation_normalize(
    c: &SetColoring,
    pinned: &[VertexId],
) -> Result<(SetColoring, Permutation), NormalizeError> {
    let mut order: Vec<u32> = Vec::new();
    for &v in pinned {
        let s = c.get(v).ok_or(NormalizeError::Uncolored(v))?;
        order.extend(s.iter().filter(|col| !order.contains(col)).collect::<Vec<_>>());
    }
    let rest: Vec<u32> = (1..=c.palette).filter(|col| !order.contains(col)).collect();
    order.extend(rest);
    let mut perm = vec![0; c.palette as usize];
    for (i, &col) in order.iter().enumerate() {
        perm[(col - 1) as usize] = i as u32 + 1;
    }
    Ok((c.permuted(&perm), perm))
}

/// Sends each pinned vertex's set onto the given target set. Fails when the
/// sizes or overlaps make that impossible.
pub fn normalize_to(
    c: &SetColoring,
    pinned: &[(VertexId, ColorSet)],
) -> Result<(SetColoring, Permutation), NormalizeError> {
    for (v, _) in pinned {
        c.get(*v).ok_or(NormalizeError::Uncolored(*v))?;
    }
    let perm = find_permutation(c.palette, |view| {
        pinned.iter().all(|(v, target)| view.set(c, *v) == *target)
    })
    .ok_or(NormalizeError::Unreachable)?;
    Ok((c.permuted(&perm), perm))
}

/// A candidate permutation, applied lazily to single vertices.
pub struct View<'a> {
    perm: &'a [u32],
}

impl View<'_> {
    pub fn set(&self, c: &SetColoring, v: VertexId) -> ColorSet {
        c.get(v).map(|s| s.permuted(self.perm)).unwrap_or_default()
    }

    pub fn color(&self, col: u32) -> u32 {
        self.perm[(col - 1) as usize]
    }
}

/// The lexicographically first permutation of `1..=palette` accepted by
/// `accept`. Intended for palettes of size 6 (720 candidates).
pub fn find_permutation<F: FnMut(&View) -> bool>(palette: u32, mut accept: F) -> Option<Permutation> {
    let mut perm = identity(palette);
    loop {
        if accept(&View { perm: &perm }) {
            return Some(perm);
        }
        if !next_permutation(&mut perm) {
            return None;
        }
    }
}

fn next_permutation(p: &mut [u32]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coloring(entries: &[(VertexId, &[u32])]) -> SetColoring {
        let mut c = SetColoring::new(6);
        for (v, s) in entries {
            c.set(*v, s.iter().copied().collect::<ColorSet>());
        }
        c
    }

    #[test]
    fn sends_x_to_one_two_three() {
        let c = coloring(&[(0, &[2, 4, 6]), (1, &[1, 3])]);
        let (n, perm) = color_permutation_normalize(&c, &[0]).unwrap();
        assert_eq!(n.get(0), Some(&ColorSet::from([1, 2, 3])));
        assert_eq!(n.permuted(&invert(&perm)), c);
    }

    #[test]
    fn canonical_input_gives_identity() {
        let c = coloring(&[(0, &[1, 2, 3]), (1, &[4, 5])]);
        let (n, perm) = color_permutation_normalize(&c, &[0, 1]).unwrap();
        assert_eq!(perm, identity(6));
        assert_eq!(n, c);
    }

    #[test]
    fn targeted_forms() {
        let c = coloring(&[(0, &[2, 4, 6]), (1, &[1, 3])]);
        let (n, _) = normalize_to(&c, &[(0, [1, 2, 3].into()), (1, [4, 5].into())]).unwrap();
        assert_eq!(n.get(1), Some(&ColorSet::from([4, 5])));
        assert_eq!(normalize_to(&c, &[(0, [1, 2].into())]), Err(NormalizeError::Unreachable));
        assert_eq!(normalize_to(&c, &[(9, [1, 2].into())]), Err(NormalizeError::Uncolored(9)));
    }

    #[test]
    fn permutations_enumerate_in_order() {
        let mut count = 0;
        let mut last: Option<Permutation> = None;
        find_permutation(4, |v| {
            let p: Permutation = (1..=4).map(|c| v.color(c)).collect();
            assert!(last.as_ref().is_none_or(|l| *l < p));
            last = Some(p);
            count += 1;
            false
        });
        assert_eq!(count, 24);
    }
}
