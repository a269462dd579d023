use std::fmt;

use smallvec::SmallVec;

/// Set of colors from `{1, 2, ...}`, stored as a bit vector (color `c` is
/// bit `c - 1`). Trailing zero words are trimmed, so equal sets compare equal.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ColorSet {
    words: SmallVec<[u64; 1]>,
}

impl ColorSet {
    pub fn new() -> ColorSet {
        ColorSet::default()
    }

    pub fn from_mask(mask: u64) -> ColorSet {
        let mut s = ColorSet { words: SmallVec::from_buf([mask]) };
        s.trim();
        s
    }

    /// `{1, ..., a}`.
    pub fn full(a: u32) -> ColorSet {
        (1..=a).collect()
    }

    /// The bit mask, when every color is at most 64.
    pub fn as_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn contains(&self, c: u32) -> bool {
        assert!(c >= 1, "colors start at 1");
        let (w, b) = ((c - 1) as usize / 64, (c - 1) % 64);
        self.words.get(w).is_some_and(|x| x >> b & 1 == 1)
    }

    pub fn insert(&mut self, c: u32) {
        assert!(c >= 1, "colors start at 1");
        let (w, b) = ((c - 1) as usize / 64, (c - 1) % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << b;
    }

    pub fn remove(&mut self, c: u32) {
        assert!(c >= 1, "colors start at 1");
        let (w, b) = ((c - 1) as usize / 64, (c - 1) % 64);
        if let Some(x) = self.words.get_mut(w) {
            *x &= !(1 << b);
        }
        self.trim();
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    fn zip_with(&self, other: &ColorSet, f: impl Fn(u64, u64) -> u64) -> ColorSet {
        let n = self.words.len().max(other.words.len());
        let get = |s: &ColorSet, i: usize| s.words.get(i).copied().unwrap_or(0);
        let mut out = ColorSet { words: (0..n).map(|i| f(get(self, i), get(other, i))).collect() };
        out.trim();
        out
    }

    pub fn union(&self, other: &ColorSet) -> ColorSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &ColorSet) -> ColorSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &ColorSet) -> ColorSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn is_disjoint(&self, other: &ColorSet) -> bool {
        self.words.iter().zip(other.words.iter()).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &ColorSet) -> bool {
        self.difference(other).is_empty()
    }

    /// Colors in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            (0..64u32).filter(move |b| word >> b & 1 == 1).map(move |b| w as u32 * 64 + b + 1)
        })
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn max_color(&self) -> Option<u32> {
        self.iter().last()
    }

    /// Adds `offset` to every color.
    pub fn shifted(&self, offset: u32) -> ColorSet {
        self.iter().map(|c| c + offset).collect()
    }

    /// Applies a palette permutation given as `perm[c - 1] = image of c`.
    pub fn permuted(&self, perm: &[u32]) -> ColorSet {
        self.iter().map(|c| perm[(c - 1) as usize]).collect()
    }

    /// Lexicographic comparison of the sorted color sequences.
    pub fn lex_cmp(&self, other: &ColorSet) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl FromIterator<u32> for ColorSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> ColorSet {
        let mut s = ColorSet::new();
        for c in iter {
            s.insert(c);
        }
        s
    }
}

impl<const N: usize> From<[u32; N]> for ColorSet {
    fn from(colors: [u32; N]) -> ColorSet {
        colors.into_iter().collect()
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// All `k`-subsets of the colors in `mask`, in lexicographic order.
pub fn subsets_of_size(mask: u64, k: u32) -> Vec<u64> {
    let colors: Vec<u32> = (0..64).filter(|b| mask >> b & 1 == 1).collect();
    let mut out = Vec::new();
    if k as usize > colors.len() {
        return out;
    }
    fn rec(colors: &[u32], k: usize, start: usize, cur: u64, out: &mut Vec<u64>, depth: usize) {
        if depth == k {
            out.push(cur);
            return;
        }
        for i in start..=colors.len() - (k - depth) {
            rec(colors, k, i + 1, cur | 1 << colors[i], out, depth + 1);
        }
    }
    rec(&colors, k as usize, 0, 0, &mut out, 0);
    out
}
