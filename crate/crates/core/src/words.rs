//! Square-free ternary words and a 4-colouring of paths in which every
//! repetitive lazy walk is boring.
//!
//! The path colouring is `h(t)` where `t` is the ternary Thue word (fixed
//! point of `2 -> 210, 1 -> 20, 0 -> 1`) and `h` is the 5-uniform morphism
//!
//! ```text
//! 0 -> 01203    1 -> 10213    2 -> 20123
//! ```
//!
//! `h` maps every square-free ternary word of length 3 to a square-free word,
//! which for a uniform morphism is enough for `h(t)` to be square-free. Its
//! images also keep every three consecutive letters distinct. Those two facts
//! give the boring-walk property: with any three consecutive colours distinct,
//! two lazy walks that trace the same colour sequence stay and turn around at
//! exactly the same steps, so one is a translate or a reflection of the
//! other. A translate by `d != 0` exposes a square of length `2|d|`, and a
//! reflection exposes a palindrome of length at least two (hence a factor
//! `aa` or `aba`). Neither occurs, so the two halves coincide.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A word over the alphabet `0..alphabet`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<u8>,
    alphabet: u8,
}

impl Word {
    pub fn new(letters: Vec<u8>, alphabet: u8) -> Result<Self> {
        if let Some(&l) = letters.iter().find(|&&l| l >= alphabet) {
            return Err(Error::InvalidArgument(format!(
                "letter {l} outside alphabet of size {alphabet}"
            )));
        }
        Ok(Word { letters, alphabet })
    }

    /// Parses a plain digit string such as `"0121"`.
    pub fn from_digits(s: &str, alphabet: u8) -> Result<Self> {
        let letters = s
            .trim()
            .chars()
            .map(|c| {
                c.to_digit(10).map(|d| d as u8).ok_or_else(|| {
                    Error::InvalidArgument(format!("non-digit {c:?} in word"))
                })
            })
            .collect::<Result<Vec<u8>>>()?;
        Word::new(letters, alphabet)
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn alphabet(&self) -> u8 {
        self.alphabet
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Colouring `c_0 .. c_{n-1}` of the path `v_0 - v_1 - ... - v_{n-1}` over `{0,1,2,3}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PathColouring(Vec<u8>);

impl PathColouring {
    /// Wraps an arbitrary sequence over `{0,1,2,3}`; properness is not required
    /// here so that bad colourings can be fed to [`verify_boring`].
    pub fn new(colours: Vec<u8>) -> Result<Self> {
        if let Some(&c) = colours.iter().find(|&&c| c > 3) {
            return Err(Error::InvalidColouring(format!("colour {c} outside 0..4")));
        }
        Ok(PathColouring(colours))
    }

    pub fn colours(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_proper(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }
}

fn thue_ternary(n: usize) -> Vec<u8> {
    let mut w = vec![2u8];
    while w.len() < n {
        w = w
            .iter()
            .flat_map(|&c| match c {
                2 => &[2u8, 1, 0][..],
                1 => &[2, 0],
                _ => &[1],
            })
            .copied()
            .collect();
    }
    w.truncate(n);
    w
}

/// Length-`n` prefix of the ternary Thue word; square-free for every `n`.
pub fn ternary_squarefree(n: usize) -> Word {
    Word {
        letters: thue_ternary(n),
        alphabet: 3,
    }
}

/// A square `XX` inside a word: start position and `|X|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Square {
    pub position: usize,
    pub half_length: usize,
}

/// The first square of `w` ordered by start position, then half-length.
/// `None` means `w` is square-free.
pub fn is_squarefree(w: &Word) -> Option<Square> {
    first_square(w.letters())
}

pub(crate) fn first_square<T: PartialEq>(w: &[T]) -> Option<Square> {
    let n = w.len();
    for position in 0..n {
        for half_length in 1..=(n - position) / 2 {
            let (a, b) = w[position..position + 2 * half_length].split_at(half_length);
            if a == b {
                return Some(Square {
                    position,
                    half_length,
                });
            }
        }
    }
    None
}

const PATH_MORPHISM: [[u8; 5]; 3] = [[0, 1, 2, 0, 3], [1, 0, 2, 1, 3], [2, 0, 1, 2, 3]];

/// 4-colouring of `P_n` in which every repetitive lazy walk is boring.
/// Prefix-consistent: `path_colouring_4(m)` is a prefix of `path_colouring_4(n)` for `m <= n`.
pub fn path_colouring_4(n: usize) -> PathColouring {
    let base = thue_ternary(n.div_ceil(5));
    let mut colours: Vec<u8> = base
        .iter()
        .flat_map(|&l| PATH_MORPHISM[l as usize])
        .collect();
    colours.truncate(n);
    PathColouring(colours)
}

/// Searches every lazy walk of even length `2k <= max_len` in the path for
/// one that is repetitive under `c` but not boring.
///
/// Walks are tried by increasing `k`, then start vertex, then depth-first with
/// moves ordered left, stay, right; the first hit is returned as a vertex
/// sequence (0-based). `Ok(None)` means none exists up to the cap.
pub fn verify_boring(c: &PathColouring, max_len: usize) -> Result<Option<Vec<usize>>> {
    if max_len < 2 || !max_len.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "walk-length cap must be even and >= 2, got {max_len}"
        )));
    }
    let n = c.len();
    let mut walk = Vec::with_capacity(max_len);
    for k in 1..=max_len / 2 {
        for start in 0..n {
            walk.clear();
            walk.push(start);
            if first_half(c.colours(), k, &mut walk) {
                return Ok(Some(walk));
            }
        }
    }
    Ok(None)
}

fn path_steps(n: usize, p: usize) -> impl Iterator<Item = usize> {
    [p.checked_sub(1), Some(p), Some(p + 1).filter(|&q| q < n)]
        .into_iter()
        .flatten()
}

fn first_half(c: &[u8], k: usize, walk: &mut Vec<usize>) -> bool {
    if walk.len() == k {
        return second_half(c, k, walk, false);
    }
    let last = *walk.last().unwrap();
    for next in path_steps(c.len(), last) {
        walk.push(next);
        if first_half(c, k, walk) {
            return true;
        }
        walk.pop();
    }
    false
}

fn second_half(c: &[u8], k: usize, walk: &mut Vec<usize>, differs: bool) -> bool {
    let j = walk.len() - k;
    if j == k {
        return differs;
    }
    let last = *walk.last().unwrap();
    let want = c[walk[j]];
    for next in path_steps(c.len(), last) {
        if c[next] != want {
            continue;
        }
        let d = differs || next != walk[j];
        walk.push(next);
        if second_half(c, k, walk, d) {
            return true;
        }
        walk.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thue_prefix_is_the_known_word() {
        assert_eq!(ternary_squarefree(12).to_string(), "210201210120");
        assert!(ternary_squarefree(0).is_empty());
        assert_eq!(ternary_squarefree(1).len(), 1);
    }

    #[test]
    fn square_detection_examples() {
        let w = |s: &str| Word::from_digits(s, 3).unwrap();
        assert_eq!(is_squarefree(&w("010")), None);
        assert_eq!(
            is_squarefree(&w("0101")),
            Some(Square {
                position: 0,
                half_length: 2
            })
        );
        assert_eq!(
            is_squarefree(&w("00")),
            Some(Square {
                position: 0,
                half_length: 1
            })
        );
        // ordered by start first
        assert_eq!(
            is_squarefree(&w("0121211")),
            Some(Square {
                position: 1,
                half_length: 2
            })
        );
    }

    #[test]
    fn word_rejects_bad_letters() {
        assert!(Word::new(vec![0, 3], 3).is_err());
        assert!(Word::from_digits("01a", 3).is_err());
    }

    #[test]
    fn path_colouring_small_cases() {
        assert_eq!(path_colouring_4(1).len(), 1);
        let p2 = path_colouring_4(2);
        assert_ne!(p2.colours()[0], p2.colours()[1]);
        assert!(path_colouring_4(0).is_empty());
    }

    #[test]
    fn path_colouring_window_and_squares() {
        let c = path_colouring_4(3000);
        assert!(c.colours().windows(3).all(|w| w[0] != w[1] && w[1] != w[2] && w[0] != w[2]));
        assert_eq!(first_square(c.colours()), None);
    }

    #[test]
    fn verify_boring_examples() {
        let constant = PathColouring::new(vec![0, 0]).unwrap();
        assert_eq!(verify_boring(&constant, 2).unwrap(), Some(vec![0, 1]));
        assert_eq!(verify_boring(&path_colouring_4(12), 12).unwrap(), None);
        for c in 0..4 {
            let p1 = PathColouring::new(vec![c]).unwrap();
            assert_eq!(verify_boring(&p1, 8).unwrap(), None);
        }
        assert!(verify_boring(&path_colouring_4(3), 3).is_err());
        assert!(verify_boring(&path_colouring_4(3), 0).is_err());
    }

    #[test]
    fn separator_interleaving_is_not_enough() {
        // odd positions share one colour, even positions follow a Thue word
        let t = ternary_squarefree(10);
        let c: Vec<u8> = t.letters().iter().flat_map(|&l| [3, l]).collect();
        let c = PathColouring::new(c).unwrap();
        let walk = verify_boring(&c, 4).unwrap().expect("counterexample");
        assert_eq!(walk, vec![0, 1, 2, 1]);
    }
}
