use std::fmt;

use crate::error::{Error, Result};

/// Weakly decreasing sequence of positive integers; trailing zeros are dropped.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Contract(format!(
                "partition parts must be weakly decreasing, got {parts:?}"
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    /// The empty partition, indexing the unit class.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// `(i)`: a single row.
    pub fn row(i: usize) -> Self {
        Self::from_sorted(vec![i])
    }

    /// `(1^i)`: a single column.
    pub fn column(i: usize) -> Self {
        Self::from_sorted(vec![1; i])
    }

    pub(crate) fn from_sorted(mut parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Part `i`, zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// All partitions fitting in `rows x cols`, in no particular order.
    pub fn all_in_box(rows: usize, cols: usize) -> Vec<Partition> {
        fn go(rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            out.push(Partition::from_sorted(cur.clone()));
            if cur.len() == rows {
                return;
            }
            for p in 1..=max {
                cur.push(p);
                go(rows, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(rows, cols, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The `k x (n-k)` rectangle indexing Schubert classes of `G(k, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoxShape {
    rows: usize,
    cols: usize,
}

impl BoxShape {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Domain(format!(
                "box sides must be positive, got {rows}x{cols}"
            )));
        }
        Ok(BoxShape { rows, cols })
    }

    /// The box of `G(k, n)`.
    pub fn grassmannian(k: usize, n: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::Domain(format!("G({k},{n}) needs 1 <= k < n")));
        }
        Self::new(k, n - k)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Dimension of the Grassmannian.
    pub fn cells(&self) -> usize {
        self.rows * self.cols
    }

    pub fn fits(&self, p: &Partition) -> bool {
        p.len() <= self.rows && p.part(0) <= self.cols
    }

    /// The full rectangle, i.e. the point class.
    pub fn full(&self) -> Partition {
        Partition::from_sorted(vec![self.cols; self.rows])
    }

    /// Complement of `p` inside the box, rotated by 180 degrees.
    pub fn complement(&self, p: &Partition) -> Partition {
        debug_assert!(self.fits(p));
        Partition::from_sorted(
            (0..self.rows)
                .rev()
                .map(|i| self.cols - p.part(i))
                .collect(),
        )
    }

    pub fn partitions(&self) -> Vec<Partition> {
        Partition::all_in_box(self.rows, self.cols)
    }
}

impl fmt::Display for BoxShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}
