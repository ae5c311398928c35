//! Permutations over `{0, …, n-1}` and the spread metric.
//!
//! The spread of a permutation is the minimum, over all pairs of distinct
//! positions, of the circular distance between the positions plus the
//! circular distance between their images. It is at least 2 and at most
//! `⌊√(2n)⌋` for blocklength `n`.

use std::fmt;
use std::str::FromStr;

use crate::math::isqrt_u64;

/// Errors from permutation construction, parsing and index checks.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PermutationError {
    #[error("blocklength must be at least 2, got {len}")]
    TooShort { len: usize },
    #[error("value {value} at position {index} is out of range for blocklength {n}")]
    ValueOutOfRange {
        index: usize,
        value: usize,
        n: usize,
    },
    #[error("value {value} appears more than once (positions {first} and {second})")]
    DuplicateValue {
        value: usize,
        first: usize,
        second: usize,
    },
    #[error("index {index} is out of range for blocklength {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("line {line}: cannot parse `{token}` as a nonnegative integer")]
    InvalidToken { line: usize, token: String },
}

/// Circular distance `min(|a-b|, n-|a-b|)` on the ring of `n` points.
///
/// Positions 0 and n-1 are neighbors. Errors when an index is outside
/// `0..n` or the ring is degenerate (`n < 2`).
pub fn circular_distance(a: usize, b: usize, n: usize) -> Result<usize, PermutationError> {
    if n < 2 {
        return Err(PermutationError::TooShort { len: n });
    }
    for index in [a, b] {
        if index >= n {
            return Err(PermutationError::IndexOutOfRange { index, n });
        }
    }
    Ok(circ(a, b, n))
}

/// Unchecked circular distance; callers guarantee `a, b < n`.
#[inline]
pub(crate) fn circ(a: usize, b: usize, n: usize) -> usize {
    let d = a.abs_diff(b);
    d.min(n - d)
}

/// A validated bijection on `{0, …, n-1}`, `n >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    /// Validates `mapping` as a bijection on `{0, …, len-1}` with `len >= 2`.
    pub fn new(mapping: Vec<usize>) -> Result<Self, PermutationError> {
        let n = mapping.len();
        if n < 2 {
            return Err(PermutationError::TooShort { len: n });
        }
        let mut seen_at = vec![usize::MAX; n];
        for (index, &value) in mapping.iter().enumerate() {
            if value >= n {
                return Err(PermutationError::ValueOutOfRange { index, value, n });
            }
            if seen_at[value] != usize::MAX {
                return Err(PermutationError::DuplicateValue {
                    value,
                    first: seen_at[value],
                    second: index,
                });
            }
            seen_at[value] = index;
        }
        Ok(Self { map: mapping })
    }

    /// Wraps a mapping already known to be a valid permutation.
    pub(crate) fn from_trusted(map: Vec<usize>) -> Self {
        debug_assert!(Self::new(map.clone()).is_ok());
        Self { map }
    }

    /// The identity permutation of blocklength `n >= 2`.
    pub fn identity(n: usize) -> Result<Self, PermutationError> {
        if n < 2 {
            return Err(PermutationError::TooShort { len: n });
        }
        Ok(Self::from_trusted((0..n).collect()))
    }

    /// Blocklength `n`.
    pub fn blocklength(&self) -> usize {
        self.map.len()
    }

    /// The raw mapping; `as_slice()[i]` is the image of position `i`.
    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    /// Spread by exhaustive scan over all unordered pairs.
    ///
    /// Quadratic in the blocklength; serves as the reference that the
    /// windowed variant is checked against.
    pub fn spread(&self) -> usize {
        let n = self.blocklength();
        let mut best = usize::MAX;
        for i in 0..n {
            for j in (i + 1)..n {
                let sum = circ(i, j, n) + circ(self.map[i], self.map[j], n);
                if sum < best {
                    best = sum;
                }
            }
        }
        best
    }

    /// Spread restricted to pairs of positions closer than `⌊√(2n)⌋`.
    ///
    /// Pairs at positional distance `d` contribute at least `d + 1`, and
    /// some pair always realizes a sum within the spread cap, so scanning
    /// distances `1..⌊√(2n)⌋` in increasing order and stopping once no
    /// farther pair can improve the minimum returns exactly `spread()` in
    /// `O(n·√n)` worst case.
    pub fn spread_windowed(&self) -> usize {
        self.windowed_scan().0
    }

    /// Spread plus one pair of positions realizing it.
    pub fn spread_witness(&self) -> (usize, (usize, usize)) {
        let (value, pair) = self.windowed_scan();
        (value, pair)
    }

    fn windowed_scan(&self) -> (usize, (usize, usize)) {
        let n = self.blocklength();
        let cap = isqrt_u64(2 * n as u64) as usize;
        let mut best = usize::MAX;
        let mut witness = (0, 0);
        for d in 1..cap.max(2) {
            for i in 0..n {
                let j = if i + d < n { i + d } else { i + d - n };
                let sum = d + circ(self.map[i], self.map[j], n);
                if sum < best {
                    best = sum;
                    witness = (i, j);
                    if best == 2 {
                        return (best, witness);
                    }
                }
            }
            // pairs at distance > d sum to at least d + 2
            if best <= d + 2 {
                break;
            }
        }
        (best, witness)
    }

    /// Inverse permutation.
    pub fn inverse(&self) -> Permutation {
        let n = self.blocklength();
        let mut inv = vec![0; n];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Self::from_trusted(inv)
    }

    /// Cyclic shift of positions: `q(i) = p((i + c) mod n)`.
    pub fn shift_positions(&self, c: usize) -> Permutation {
        let n = self.blocklength();
        Self::from_trusted((0..n).map(|i| self.map[(i + c) % n]).collect())
    }

    /// Cyclic shift of values: `q(i) = (p(i) + c) mod n`.
    pub fn shift_values(&self, c: usize) -> Permutation {
        let n = self.blocklength();
        Self::from_trusted(self.map.iter().map(|&v| (v + c) % n).collect())
    }

    /// Reflection of positions: `q(i) = p(n - 1 - i)`.
    pub fn reflect_positions(&self) -> Permutation {
        let mut map = self.map.clone();
        map.reverse();
        Self::from_trusted(map)
    }

    /// Parses the permutation text format: ASCII integers separated by
    /// whitespace or newlines, lines starting with `#` ignored.
    pub fn parse_text(text: &str) -> Result<Self, PermutationError> {
        let mut values = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            for token in line.split_whitespace() {
                let value = token
                    .parse::<usize>()
                    .map_err(|_| PermutationError::InvalidToken {
                        line: lineno + 1,
                        token: token.to_string(),
                    })?;
                values.push(value);
            }
        }
        Self::new(values)
    }
}

impl FromStr for Permutation {
    type Err = PermutationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_text(s)
    }
}

impl fmt::Display for Permutation {
    /// Writes the permutation in the text format accepted by `parse_text`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::ops::Index<usize> for Permutation {
    type Output = usize;

    fn index(&self, i: usize) -> &usize {
        &self.map[i]
    }
}

/// Spread of a raw mapping known to be a permutation; used by the
/// sampling hot loop to skip re-validation.
pub(crate) fn spread_windowed_raw(map: &[usize]) -> usize {
    let n = map.len();
    let cap = isqrt_u64(2 * n as u64) as usize;
    let mut best = usize::MAX;
    for d in 1..cap.max(2) {
        for i in 0..n {
            let j = if i + d < n { i + d } else { i + d - n };
            let sum = d + circ(map[i], map[j], n);
            if sum < best {
                best = sum;
                if best == 2 {
                    return 2;
                }
            }
        }
        if best <= d + 2 {
            break;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circular_distance_examples() {
        assert_eq!(circular_distance(0, 9, 10), Ok(1));
        assert_eq!(circular_distance(3, 7, 10), Ok(4));
        assert_eq!(circular_distance(4, 4, 10), Ok(0));
    }

    #[test]
    fn circular_distance_is_symmetric_and_capped() {
        let n = 11;
        for a in 0..n {
            for b in 0..n {
                let d = circular_distance(a, b, n).unwrap();
                assert_eq!(d, circular_distance(b, a, n).unwrap());
                assert!(d <= n / 2);
                assert_eq!(d == 0, a == b);
            }
        }
    }

    #[test]
    fn circular_distance_rejects_bad_indices() {
        assert_eq!(
            circular_distance(10, 0, 10),
            Err(PermutationError::IndexOutOfRange { index: 10, n: 10 })
        );
        assert_eq!(
            circular_distance(0, 0, 1),
            Err(PermutationError::TooShort { len: 1 })
        );
    }

    #[test]
    fn validation_accepts_bijections() {
        let p = Permutation::new(vec![1, 0, 2]).unwrap();
        assert_eq!(p.blocklength(), 3);
    }

    #[test]
    fn validation_reports_distinct_errors() {
        assert_eq!(
            Permutation::new(vec![0, 0, 1]),
            Err(PermutationError::DuplicateValue {
                value: 0,
                first: 0,
                second: 1
            })
        );
        assert_eq!(
            Permutation::new(vec![5]),
            Err(PermutationError::TooShort { len: 1 })
        );
        assert_eq!(
            Permutation::new(vec![0, 3, 1]),
            Err(PermutationError::ValueOutOfRange {
                index: 1,
                value: 3,
                n: 3
            })
        );
    }

    #[test]
    fn spread_of_identity_is_two() {
        assert_eq!(Permutation::identity(8).unwrap().spread(), 2);
        assert_eq!(Permutation::identity(100).unwrap().spread_windowed(), 2);
    }

    #[test]
    fn spread_reaches_the_cap_at_n5() {
        // all adjacent positions map to values at circular distance 2,
        // so every pair sums to 3 = ⌊√10⌋
        let p = Permutation::new(vec![0, 2, 4, 1, 3]).unwrap();
        assert_eq!(p.spread(), 3);
        assert_eq!(p.spread_windowed(), 3);
    }

    #[test]
    fn spread_of_the_smallest_blocklength() {
        let p = Permutation::new(vec![0, 1]).unwrap();
        assert_eq!(p.spread(), 2);
        assert_eq!(p.spread_windowed(), 2);
    }

    #[test]
    fn witness_pair_realizes_the_spread() {
        for p in [
            Permutation::new(vec![0, 2, 4, 1, 3]).unwrap(),
            Permutation::identity(16).unwrap(),
            Permutation::new(vec![3, 0, 4, 1, 5, 2]).unwrap(),
        ] {
            let n = p.blocklength();
            let (s, (i, j)) = p.spread_witness();
            assert_eq!(s, p.spread());
            assert_ne!(i, j);
            assert_eq!(circ(i, j, n) + circ(p[i], p[j], n), s);
        }
    }

    #[test]
    fn windowed_scan_and_symmetries_exhaustive_through_n8() {
        // every permutation for n in 2..=8
        for n in 2..=8usize {
            let mut buf: Vec<usize> = (0..n).collect();
            visit(&mut buf, 0, &mut |map: &[usize]| {
                let p = Permutation::new(map.to_vec()).unwrap();
                let s = p.spread();
                assert_eq!(s, p.spread_windowed(), "windowed mismatch at {map:?}");
                assert_eq!(s, p.inverse().spread_windowed(), "inverse at {map:?}");
                assert_eq!(
                    s,
                    p.shift_positions(1).spread_windowed(),
                    "shift at {map:?}"
                );
                assert_eq!(
                    s,
                    p.shift_values(1).spread_windowed(),
                    "value shift at {map:?}"
                );
                assert_eq!(
                    s,
                    p.reflect_positions().spread_windowed(),
                    "reflect at {map:?}"
                );
            });
        }

        fn visit(buf: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
            if k == buf.len() {
                f(buf);
                return;
            }
            for i in k..buf.len() {
                buf.swap(k, i);
                visit(buf, k + 1, f);
                buf.swap(k, i);
            }
        }
    }

    #[test]
    fn transforms_preserve_spread() {
        let p = Permutation::new(vec![4, 1, 6, 3, 0, 5, 2, 7]).unwrap();
        let s = p.spread();
        assert_eq!(p.inverse().spread(), s);
        assert_eq!(p.shift_positions(3).spread(), s);
        assert_eq!(p.shift_values(5).spread(), s);
        assert_eq!(p.reflect_positions().spread(), s);
    }

    #[test]
    fn text_format_round_trip() {
        let text = "# sample interleaver\n0 2 4\n# trailing comment\n1 3\n";
        let p = Permutation::parse_text(text).unwrap();
        assert_eq!(p.as_slice(), &[0, 2, 4, 1, 3]);
        let back: Permutation = p.to_string().parse().unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn text_format_rejects_garbage() {
        assert_eq!(
            Permutation::parse_text("0 1 x"),
            Err(PermutationError::InvalidToken {
                line: 1,
                token: "x".into()
            })
        );
        assert_eq!(
            Permutation::parse_text("0 -1 2"),
            Err(PermutationError::InvalidToken {
                line: 1,
                token: "-1".into()
            })
        );
    }
}
