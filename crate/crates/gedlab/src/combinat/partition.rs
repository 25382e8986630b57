use std::fmt;

use crate::GedError;

/// Integer partition: a weakly decreasing sequence of positive parts.
///
/// The empty sequence is the unique partition of weight 0. Partitions index
/// Schubert classes, so the rectangle tests (`fits_in`, `complement_in`)
/// follow the convention "rows = maximal length, cols = maximal part".
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds a partition, rejecting zero parts and misordered sequences.
    pub fn new(parts: Vec<u32>) -> Result<Self, GedError> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(GedError::invalid(format!(
                    "partition parts must be weakly decreasing, got {:?}",
                    parts
                )));
            }
        }
        if parts.contains(&0) {
            return Err(GedError::invalid("partition parts must be positive"));
        }
        Ok(Partition(parts))
    }

    /// Sorts the given parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p != 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// A single row of length `n` (empty when `n == 0`).
    pub fn row(n: u32) -> Self {
        if n == 0 {
            Partition::empty()
        } else {
            Partition(vec![n])
        }
    }

    /// A single column of height `n`, i.e. `(1^n)`.
    pub fn column(n: u32) -> Self {
        Partition(vec![1; n as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `i`-th part (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    /// True iff the diagram has at most `rows` rows and parts at most `cols`.
    pub fn fits_in(&self, rows: u32, cols: u32) -> bool {
        self.len() as u32 <= rows && self.part(0) <= cols
    }

    /// Diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other
            .parts()
            .iter()
            .enumerate()
            .all(|(i, &p)| self.part(i) >= p)
    }

    /// Complement inside a `rows x cols` rectangle: the partition whose parts
    /// are `cols - part(rows-1-i)`. Returns `None` when `self` does not fit.
    pub fn complement_in(&self, rows: u32, cols: u32) -> Option<Partition> {
        if !self.fits_in(rows, cols) {
            return None;
        }
        let parts: Vec<u32> = (0..rows as usize)
            .map(|i| cols - self.part(rows as usize - 1 - i))
            .filter(|&p| p != 0)
            .collect();
        Some(Partition(parts))
    }

    pub fn conjugate(&self) -> Partition {
        let height = self.part(0);
        let parts: Vec<u32> = (0..height)
            .map(|c| self.0.iter().filter(|&&p| p > c).count() as u32)
            .collect();
        Partition(parts)
    }

    /// The full `rows x cols` rectangle `(cols^rows)`.
    pub fn rectangle(rows: u32, cols: u32) -> Partition {
        if cols == 0 {
            Partition::empty()
        } else {
            Partition(vec![cols; rows as usize])
        }
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

/// All partitions fitting in a `rows x cols` rectangle, every weight,
/// ordered by (weight, lexicographic).
pub fn partitions_in_rect(rows: u32, cols: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current: Vec<u32> = Vec::new();
    fn rec(out: &mut Vec<Partition>, current: &mut Vec<u32>, rows_left: u32, max_part: u32) {
        out.push(Partition(current.clone()));
        if rows_left == 0 {
            return;
        }
        for p in (1..=max_part).rev() {
            current.push(p);
            rec(out, current, rows_left - 1, p);
            current.pop();
        }
    }
    rec(&mut out, &mut current, rows, cols);
    out.sort_by_key(|p| (p.weight(), p.0.clone()));
    out.dedup();
    out
}
