//! Permutations on `0..degree`, with cycle-notation parsing for model files.

use crate::error::{Error, Result};

/// A permutation stored as the image vector: `p[i]` is where point `i` goes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm((0..degree).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0[point]
    }

    /// `self * other` means apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Number of cycles, fixed points included.
    pub fn orbit_count(&self) -> usize {
        let mut seen = vec![false; self.0.len()];
        let mut count = 0;
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.0[p];
            }
        }
        count
    }

    pub fn from_vec(v: Vec<usize>) -> Result<Perm> {
        let n = v.len();
        let mut seen = vec![false; n];
        for &x in &v {
            if x >= n {
                return Err(Error::Invalid(format!(
                    "permutation image {x} out of range for degree {n}"
                )));
            }
            if seen[x] {
                return Err(Error::Invalid(format!("permutation repeats image {x}")));
            }
            seen[x] = true;
        }
        Ok(Perm(v))
    }

    /// Parse one-line cycle notation like `(1 2 3)(4 5)` or compact `(123)(45)`.
    ///
    /// Points are 1-based in the text. The compact digit-per-point form is
    /// only accepted when the degree is at most 9.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Perm> {
        let mut image: Vec<usize> = (0..degree).collect();
        let body = text.trim();
        if body.is_empty() || body == "()" {
            return Ok(Perm(image));
        }
        if !body.starts_with('(') {
            return Err(Error::Invalid(format!("cycle string must start with '(': {text}")));
        }
        for cycle_text in body.split(')') {
            let cycle_text = cycle_text.trim();
            if cycle_text.is_empty() {
                continue;
            }
            let inner = cycle_text
                .strip_prefix('(')
                .ok_or_else(|| Error::Invalid(format!("unbalanced parentheses in {text}")))?
                .trim();
            if inner.is_empty() {
                continue;
            }
            let points = parse_cycle_points(inner, degree, text)?;
            if points.len() < 2 {
                continue;
            }
            // overlapping cycles compose right-to-left; disjoint is typical
            let mut step: Vec<usize> = (0..degree).collect();
            for w in 0..points.len() {
                step[points[w]] = points[(w + 1) % points.len()];
            }
            image = image.iter().map(|&x| step[x]).collect();
        }
        Perm::from_vec(image)
    }
}

fn parse_cycle_points(inner: &str, degree: usize, whole: &str) -> Result<Vec<usize>> {
    let tokens: Vec<&str> = inner
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .collect();
    let raw: Vec<usize> = if tokens.len() == 1 && tokens[0].len() > 1 && degree <= 9 {
        tokens[0]
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::Invalid(format!("bad cycle digit in {whole}")))
            })
            .collect::<Result<_>>()?
    } else {
        tokens
            .iter()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Invalid(format!("bad cycle point '{t}' in {whole}")))
            })
            .collect::<Result<_>>()?
    };
    let mut points = Vec::with_capacity(raw.len());
    for p in raw {
        if p == 0 || p > degree {
            return Err(Error::Invalid(format!(
                "cycle point {p} out of range 1..={degree} in {whole}"
            )));
        }
        if points.contains(&(p - 1)) {
            return Err(Error::Invalid(format!("repeated point {p} in cycle {whole}")));
        }
        points.push(p - 1);
    }
    Ok(points)
}
