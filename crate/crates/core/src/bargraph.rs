//! Bargraphs as height words, their type A / type B corners, and exhaustive
//! enumerators for bargraphs and set partitions.
//!
//! Corner conventions:
//!
//! * type A (down run then horizontal run) sits at every interior descent
//!   `π_{j−1} > π_j`; `a = π_{j−1} − π_j`, `b` is the length of the constant
//!   run starting at column `j`, and the corner is anchored at `j`.
//! * type B (horizontal run then down run) sits at every `j` with
//!   `π_{j+1} < π_j`, reading `π_{m+1} = 0`, so the final drop to the axis
//!   counts; `a` is the length of the constant run ending at `j`,
//!   `b = π_j − π_{j+1}`, anchored at `j`.
//!
//! The initial ascent from the axis produces neither kind.
//!
//! Columns are numbered from 1.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Bargraph {
    heights: Vec<u32>,
}

impl Bargraph {
    pub fn new(heights: Vec<u32>) -> Result<Self> {
        if let Some(pos) = heights.iter().position(|&h| h == 0) {
            return Err(Error::InvalidBargraph(format!(
                "column {} has height 0",
                pos + 1
            )));
        }
        Ok(Bargraph { heights })
    }

    pub fn empty() -> Self {
        Bargraph::default()
    }

    pub fn heights(&self) -> &[u32] {
        &self.heights
    }

    pub fn cells(&self) -> usize {
        self.heights.iter().map(|&h| h as usize).sum()
    }

    pub fn columns(&self) -> usize {
        self.heights.len()
    }

    pub fn max_height(&self) -> u32 {
        self.heights.iter().copied().max().unwrap_or(0)
    }

    pub fn corners(&self) -> Vec<Corner> {
        corners(self)
    }
}

/// Digits are concatenated when every height is a single digit
/// (`244411322`), otherwise heights are comma-separated (`10,` for a single
/// column of height 10).
impl fmt::Display for Bargraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.heights)
    }
}

fn write_word(f: &mut fmt::Formatter<'_>, letters: &[u32]) -> fmt::Result {
    if letters.iter().all(|&h| h <= 9) {
        for h in letters {
            write!(f, "{h}")?;
        }
        Ok(())
    } else {
        let parts: Vec<String> = letters.iter().map(u32::to_string).collect();
        // a lone multi-digit height keeps a comma so it reads back as one column
        let tail = if parts.len() == 1 { "," } else { "" };
        write!(f, "{}{tail}", parts.join(","))
    }
}

fn parse_word(s: &str) -> std::result::Result<Vec<u32>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    if s.contains(',') || s.contains(' ') {
        s.split([',', ' '])
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u32>().map_err(|e| format!("{t:?}: {e}")))
            .collect()
    } else {
        s.chars()
            .map(|c| c.to_digit(10).ok_or_else(|| format!("unexpected character {c:?}")))
            .collect()
    }
}

impl FromStr for Bargraph {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Bargraph::new(parse_word(s).map_err(Error::InvalidBargraph)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CornerKind {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Corner {
    pub col: usize,
    pub kind: CornerKind,
    pub a: u32,
    pub b: u32,
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({},{})@{}", self.kind, self.a, self.b, self.col)
    }
}

/// All type A and type B corners, ordered by column (A before B on ties).
pub fn corners(g: &Bargraph) -> Vec<Corner> {
    let h = &g.heights;
    let m = h.len();
    // (height, first column, last column), 0-based
    let mut runs: Vec<(u32, usize, usize)> = Vec::new();
    for (j, &v) in h.iter().enumerate() {
        match runs.last_mut() {
            Some(last) if last.0 == v => last.2 = j,
            _ => runs.push((v, j, j)),
        }
    }
    let mut out = Vec::new();
    for (r, &(height, first, last)) in runs.iter().enumerate() {
        if r > 0 && runs[r - 1].0 > height {
            out.push(Corner {
                col: first + 1,
                kind: CornerKind::A,
                a: runs[r - 1].0 - height,
                b: (last - first + 1) as u32,
            });
        }
        let next = if last + 1 < m { h[last + 1] } else { 0 };
        if next < height {
            out.push(Corner {
                col: last + 1,
                kind: CornerKind::B,
                a: (last - first + 1) as u32,
                b: height - next,
            });
        }
    }
    out.sort();
    out
}

/// A set partition in canonical sequential form (restricted growth string).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SetPartitionWord {
    letters: Vec<u32>,
}

impl SetPartitionWord {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        let mut max = 0;
        for (i, &c) in letters.iter().enumerate() {
            if c == 0 || c > max + 1 {
                return Err(Error::InvalidWord(format!(
                    "letter {c} at position {} exceeds 1 + running maximum {max}",
                    i + 1
                )));
            }
            max = max.max(c);
        }
        Ok(SetPartitionWord { letters })
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn blocks(&self) -> u32 {
        self.letters.iter().copied().max().unwrap_or(0)
    }

    pub fn as_bargraph(&self) -> Bargraph {
        Bargraph {
            heights: self.letters.clone(),
        }
    }
}

impl fmt::Display for SetPartitionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.letters)
    }
}

impl FromStr for SetPartitionWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SetPartitionWord::new(parse_word(s).map_err(Error::InvalidWord)?)
    }
}

/// Validates a raw height word as a restricted growth string and returns its
/// bargraph.
pub fn as_bargraph(letters: &[u32]) -> Result<Bargraph> {
    Ok(SetPartitionWord::new(letters.to_vec())?.as_bargraph())
}

/// Compositions of `n` in lexicographic order, optionally with exactly
/// `columns` parts and parts at most `max_height`.
pub fn enumerate_bargraphs(
    n: usize,
    columns: Option<usize>,
    max_height: Option<u32>,
) -> Compositions {
    Compositions::new(n, columns, max_height)
}

/// Restricted growth strings of length `n` in lexicographic order, optionally
/// with exactly `blocks` blocks.
pub fn enumerate_setpartitions(n: usize, blocks: Option<u32>) -> RestrictedGrowth {
    RestrictedGrowth::new(n, blocks)
}

pub struct Compositions {
    n: usize,
    parts: Option<usize>,
    hmax: u32,
    current: Option<Vec<u32>>,
    started: bool,
}

impl Compositions {
    fn new(n: usize, parts: Option<usize>, max_height: Option<u32>) -> Self {
        let hmax = max_height.unwrap_or(u32::MAX).min(n.max(1) as u32);
        let mut c = Compositions {
            n,
            parts,
            hmax,
            current: None,
            started: false,
        };
        if max_height == Some(0) && n > 0 {
            c.started = true;
            return c;
        }
        let mut word = Vec::new();
        if c.complete(&mut word, n) {
            c.current = Some(word);
        } else {
            c.started = true;
        }
        c
    }

    /// Can `rest` cells be laid out given `len` columns already placed?
    fn feasible(&self, len: usize, rest: usize) -> bool {
        match self.parts {
            Some(k) => {
                if len > k {
                    return false;
                }
                let left = k - len;
                left <= rest && rest <= left * self.hmax as usize
            }
            None => true,
        }
    }

    /// Appends the lexicographically smallest valid completion.
    fn complete(&self, word: &mut Vec<u32>, mut rest: usize) -> bool {
        if !self.feasible(word.len(), rest) {
            return false;
        }
        while rest > 0 {
            let v = (1..=self.hmax)
                .find(|&v| v as usize <= rest && self.feasible(word.len() + 1, rest - v as usize));
            match v {
                Some(v) => {
                    word.push(v);
                    rest -= v as usize;
                }
                None => return false,
            }
        }
        true
    }

    fn advance(&self, word: &mut Vec<u32>) -> bool {
        let mut rest = 0usize;
        while let Some(last) = word.pop() {
            rest += last as usize;
            for v in (last + 1)..=self.hmax {
                if v as usize > rest {
                    break;
                }
                let len = word.len() + 1;
                if self.feasible(len, rest - v as usize) {
                    word.push(v);
                    if self.complete(word, rest - v as usize) {
                        return true;
                    }
                    word.pop();
                }
            }
        }
        false
    }
}

impl Iterator for Compositions {
    type Item = Bargraph;

    fn next(&mut self) -> Option<Bargraph> {
        if !self.started {
            self.started = true;
            return self.current.clone().map(|heights| Bargraph { heights });
        }
        let mut word = self.current.take()?;
        if self.n > 0 && self.advance(&mut word) {
            self.current = Some(word.clone());
            Some(Bargraph { heights: word })
        } else {
            None
        }
    }
}

pub struct RestrictedGrowth {
    n: usize,
    blocks: Option<u32>,
    current: Option<Vec<u32>>,
    started: bool,
}

impl RestrictedGrowth {
    fn new(n: usize, blocks: Option<u32>) -> Self {
        let mut r = RestrictedGrowth {
            n,
            blocks,
            current: None,
            started: false,
        };
        let mut word = Vec::with_capacity(n);
        if r.complete(&mut word, 0) {
            r.current = Some(word);
        } else {
            r.started = true;
        }
        r
    }

    fn feasible(&self, len: usize, max: u32) -> bool {
        match self.blocks {
            Some(k) => max <= k && (k - max) as usize <= self.n - len,
            None => true,
        }
    }

    fn complete(&self, word: &mut Vec<u32>, mut max: u32) -> bool {
        if !self.feasible(word.len(), max) {
            return false;
        }
        while word.len() < self.n {
            let v = if self.feasible(word.len() + 1, max.max(1)) {
                1
            } else {
                max + 1
            };
            max = max.max(v);
            word.push(v);
            if !self.feasible(word.len(), max) {
                return false;
            }
        }
        self.blocks.is_none_or(|k| k == max)
    }

    fn advance(&self, word: &mut Vec<u32>) -> bool {
        while let Some(last) = word.pop() {
            let prefix_max = word.iter().copied().max().unwrap_or(0);
            let top = prefix_max + 1;
            for v in (last + 1)..=top {
                let max = prefix_max.max(v);
                if self.feasible(word.len() + 1, max) {
                    word.push(v);
                    if self.complete(word, max) {
                        return true;
                    }
                    word.pop();
                }
            }
        }
        false
    }
}

impl Iterator for RestrictedGrowth {
    type Item = SetPartitionWord;

    fn next(&mut self) -> Option<SetPartitionWord> {
        if !self.started {
            self.started = true;
            return self
                .current
                .clone()
                .map(|letters| SetPartitionWord { letters });
        }
        let mut word = self.current.take()?;
        if self.n > 0 && self.advance(&mut word) {
            self.current = Some(word.clone());
            Some(SetPartitionWord { letters: word })
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bg(s: &str) -> Bargraph {
        s.parse().unwrap()
    }

    fn kind(cs: &[Corner], k: CornerKind) -> Vec<(u32, u32, usize)> {
        cs.iter()
            .filter(|c| c.kind == k)
            .map(|c| (c.a, c.b, c.col))
            .collect()
    }

    #[test]
    fn example_bargraph() {
        let cs = corners(&bg("244411322"));
        assert_eq!(kind(&cs, CornerKind::A), vec![(3, 2, 5), (1, 2, 8)]);
        assert_eq!(
            kind(&cs, CornerKind::B),
            vec![(3, 3, 4), (1, 1, 7), (2, 2, 9)]
        );
    }

    #[test]
    fn trivial_bargraphs() {
        assert!(corners(&Bargraph::empty()).is_empty());
        let cs = corners(&bg("1"));
        assert_eq!(kind(&cs, CornerKind::A), vec![]);
        assert_eq!(kind(&cs, CornerKind::B), vec![(1, 1, 1)]);
    }

    #[test]
    fn small_words() {
        let cs = corners(&bg("121"));
        assert_eq!(kind(&cs, CornerKind::A), vec![(1, 1, 3)]);
        assert_eq!(kind(&cs, CornerKind::B), vec![(1, 1, 2), (1, 1, 3)]);
        let cs = corners(&bg("111"));
        assert_eq!(kind(&cs, CornerKind::A), vec![]);
        assert_eq!(kind(&cs, CornerKind::B), vec![(3, 1, 3)]);
        // ordering by column, A before B on a shared column
        let order: Vec<_> = corners(&bg("121")).iter().map(|c| (c.col, c.kind)).collect();
        assert_eq!(
            order,
            vec![(2, CornerKind::B), (3, CornerKind::A), (3, CornerKind::B)]
        );
    }

    #[test]
    fn zero_height_rejected() {
        assert!(Bargraph::new(vec![1, 0, 2]).is_err());
        assert!("1x".parse::<Bargraph>().is_err());
    }

    #[test]
    fn wide_heights_display_with_commas() {
        let g = Bargraph::new(vec![12, 3]).unwrap();
        assert_eq!(g.to_string(), "12,3");
        assert_eq!("12,3".parse::<Bargraph>().unwrap(), g);
    }

    fn words(it: impl Iterator<Item = Bargraph>) -> Vec<String> {
        it.map(|g| g.to_string()).collect()
    }

    #[test]
    fn compositions_of_three() {
        assert_eq!(words(enumerate_bargraphs(3, None, None)), ["111", "12", "21", "3"]);
        assert_eq!(words(enumerate_bargraphs(3, Some(2), None)), ["12", "21"]);
        assert_eq!(
            words(enumerate_bargraphs(4, None, Some(2))),
            ["1111", "112", "121", "211", "22"]
        );
    }

    #[test]
    fn composition_edge_cases() {
        assert_eq!(words(enumerate_bargraphs(0, None, None)), [""]);
        assert_eq!(words(enumerate_bargraphs(0, Some(0), None)), [""]);
        assert!(words(enumerate_bargraphs(0, Some(1), None)).is_empty());
        assert!(words(enumerate_bargraphs(3, Some(4), None)).is_empty());
        assert!(words(enumerate_bargraphs(5, Some(2), Some(2))).is_empty());
        assert_eq!(words(enumerate_bargraphs(4, Some(2), Some(2))), ["22"]);
        assert!(words(enumerate_bargraphs(2, None, Some(0))).is_empty());
    }

    #[test]
    fn composition_counts() {
        for n in 1..=16 {
            assert_eq!(enumerate_bargraphs(n, None, None).count(), 1 << (n - 1));
        }
        // C(n-1, k-1) compositions with k parts
        assert_eq!(enumerate_bargraphs(10, Some(4), None).count(), 84);
    }

    #[test]
    fn set_partitions_of_three() {
        let w: Vec<String> = enumerate_setpartitions(3, None).map(|w| w.to_string()).collect();
        assert_eq!(w, ["111", "112", "121", "122", "123"]);
        let w: Vec<String> = enumerate_setpartitions(3, Some(2)).map(|w| w.to_string()).collect();
        assert_eq!(w, ["112", "121", "122"]);
    }

    #[test]
    fn set_partition_edge_cases() {
        assert_eq!(enumerate_setpartitions(0, None).count(), 1);
        assert_eq!(enumerate_setpartitions(0, Some(0)).count(), 1);
        assert_eq!(enumerate_setpartitions(0, Some(1)).count(), 0);
        assert_eq!(enumerate_setpartitions(3, Some(0)).count(), 0);
        assert_eq!(enumerate_setpartitions(3, Some(4)).count(), 0);
        assert_eq!(enumerate_setpartitions(4, Some(4)).count(), 1);
    }

    #[test]
    fn restricted_growth_validation() {
        let w: SetPartitionWord = "12132134".parse().unwrap();
        assert_eq!(w.blocks(), 4);
        assert!("2".parse::<SetPartitionWord>().is_err());
        assert!("113".parse::<SetPartitionWord>().is_err());
        assert!(as_bargraph(&[1, 3]).is_err());
        assert_eq!(as_bargraph(&[1, 2, 3]).unwrap().heights(), &[1, 2, 3]);
    }
}
