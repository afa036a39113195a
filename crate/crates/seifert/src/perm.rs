//! Permutations of `{1, ..., n}` with disjoint-cycle notation.

use std::fmt;

/// A permutation of `n` points, stored as the image table of `0..n`.
///
/// Composition follows function application: `(a.compose(&b))(x) = a(b(x))`,
/// so in a product the rightmost factor acts first. Cycle notation is
/// 1-indexed and omits fixed points; the identity prints as `()`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PermError {
    #[error("image table is not a bijection")]
    NotBijective,
    #[error("point {0} is outside 1..={1}")]
    PointOutOfRange(u32, usize),
    #[error("point {0} appears twice")]
    RepeatedPoint(u32),
    #[error("malformed cycle notation at byte {0}")]
    BadCycleNotation(usize),
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from the 0-indexed image table.
    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &j in &images {
            if (j as usize) >= n {
                return Err(PermError::NotBijective);
            }
            if seen[j as usize] {
                return Err(PermError::NotBijective);
            }
            seen[j as usize] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of `degree` points from 1-indexed cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for window in 0..cycle.len() {
                let a = cycle[window];
                let b = cycle[(window + 1) % cycle.len()];
                if a == 0 || a as usize > degree {
                    return Err(PermError::PointOutOfRange(a, degree));
                }
                if b == 0 || b as usize > degree {
                    return Err(PermError::PointOutOfRange(b, degree));
                }
                if seen[(a - 1) as usize] {
                    return Err(PermError::RepeatedPoint(a));
                }
                seen[(a - 1) as usize] = true;
                images[(a - 1) as usize] = b - 1;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-indexed point.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self` after `other`: `(self.compose(other))(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&j| self.images[j as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Nontrivial cycles, each starting at its least point, ordered by that
    /// least point. Points are 1-indexed.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut point = start;
            while !seen[point] {
                seen[point] = true;
                cycle.push(point as u32 + 1);
                point = self.images[point] as usize;
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// True when every cycle, fixed points included, has length exactly `p`.
    pub fn all_cycles_have_length(&self, p: i64) -> bool {
        let n = self.images.len();
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0i64;
            let mut point = start;
            while !seen[point] {
                seen[point] = true;
                len += 1;
                point = self.images[point] as usize;
            }
            if len != p {
                return false;
            }
        }
        true
    }

    /// Sorted multiset of cycle lengths, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut point = start;
            while !seen[point] {
                seen[point] = true;
                len += 1;
                point = self.images[point] as usize;
            }
            lengths.push(len);
        }
        lengths.sort_unstable();
        lengths
    }

    /// Parses 1-indexed disjoint-cycle notation such as `(1 2)(3 4)`.
    /// `()` and the empty string denote the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self, PermError> {
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c != '(' {
                return Err(PermError::BadCycleNotation(i));
            }
            i += 1;
            let mut cycle = Vec::new();
            loop {
                while i < bytes.len() && (bytes[i] as char).is_whitespace() {
                    i += 1;
                }
                if i >= bytes.len() {
                    return Err(PermError::BadCycleNotation(i));
                }
                if bytes[i] as char == ')' {
                    i += 1;
                    break;
                }
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                if i == start {
                    return Err(PermError::BadCycleNotation(i));
                }
                let value: u32 = text[start..i]
                    .parse()
                    .map_err(|_| PermError::BadCycleNotation(start))?;
                cycle.push(value);
                // Optional separating comma.
                while i < bytes.len() && (bytes[i] as char).is_whitespace() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] as char == ',' {
                    i += 1;
                }
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
        }
        Permutation::from_cycles(degree, &cycles)
    }

    /// Sign of the permutation: `+1` for even, `-1` for odd.
    pub fn sign(&self) -> i8 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, point) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", point)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}: {}]", self.degree(), self)
    }
}
