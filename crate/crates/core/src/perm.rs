//! Permutations of `{0..n}` stored as image tables.
//!
//! Points are 0-indexed internally; cycle notation for input and output is
//! 1-indexed. Products act on the right: `p.mul(q)` first applies `p`, then `q`,
//! so `i^(pq) = (i^p)^q`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from a 0-indexed image table, rejecting anything
    /// that is not a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::Input(format!(
                    "image table {:?} is not a bijection of {{1..{}}}",
                    images.iter().map(|x| x + 1).collect::<Vec<_>>(),
                    n
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// 1-indexed image table, as written in the group file format.
    pub fn from_one_indexed(images: &[u32]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Input("point 0 in a 1-indexed image table".into()));
        }
        Self::from_images(images.iter().map(|x| x - 1).collect())
    }

    /// Builds a permutation of the given degree from disjoint 1-indexed cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt as usize > degree {
                    return Err(Error::Input(format!("point {pt} outside 1..{degree}")));
                }
                let idx = pt as usize - 1;
                if used[idx] {
                    return Err(Error::Input(format!(
                        "point {pt} appears in more than one cycle position"
                    )));
                }
                used[idx] = true;
                let next = cycle[(k + 1) % cycle.len()];
                images[idx] = next - 1;
            }
        }
        Self::from_images(images)
    }

    /// Parses cycle notation such as `(1 2 3)(4 5)` or `()`.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(Error::Input("empty permutation".into()));
        }
        while !rest.is_empty() {
            let Some(after_open) = rest.strip_prefix('(') else {
                return Err(Error::Input(format!("expected '(' at {rest:?}")));
            };
            let Some(close) = after_open.find(')') else {
                return Err(Error::Input("unclosed cycle".into()));
            };
            let body = &after_open[..close];
            let mut cycle = Vec::new();
            for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let pt: u32 = tok
                    .parse()
                    .map_err(|_| Error::Input(format!("bad point {tok:?}")))?;
                cycle.push(pt);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = after_open[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` then `other`.
    pub fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `self^other = other⁻¹ · self · other`.
    pub fn conjugate(&self, other: &Permutation) -> Permutation {
        let mut out = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            out[other.images[i] as usize] = other.images[x as usize];
        }
        Permutation { images: out }
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.apply(start);
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.apply(cur);
            }
            out.push(cycle);
        }
        out
    }

    /// Element order: lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    /// Extends the permutation to a larger degree by fixing the new points.
    pub fn extend_to(&self, degree: usize) -> Permutation {
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Permutation { images }
    }

    /// Concatenates two permutations acting on disjoint blocks of points.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let off = self.degree() as u32;
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|x| x + off));
        Permutation { images }
    }

    pub fn restrict_prefix(&self, degree: usize) -> Permutation {
        Permutation {
            images: self.images[..degree].to_vec(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for cycle in self.cycles() {
            if cycle.len() < 2 {
                continue;
            }
            wrote = true;
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
