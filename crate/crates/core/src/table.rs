use std::fmt;

use crate::error::{Error, Result};

/// Largest carrier the table representation supports.
pub const MAX_SIZE: usize = 250;

/// A total binary operation on `{0, .., n-1}`, stored row-major: `get(a, b)` is `a * b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Table {
    n: usize,
    cells: Vec<u8>,
}

impl Table {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> usize) -> Self {
        assert!(n <= MAX_SIZE);
        let mut cells = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let v = f(a, b);
                assert!(v < n, "table entry {v} out of range for size {n}");
                cells.push(v as u8);
            }
        }
        Table { n, cells }
    }

    /// Builds a table from rows, validating shape and range.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Input("empty table".into()));
        }
        if n > MAX_SIZE {
            return Err(Error::Input(format!("table size {n} exceeds {MAX_SIZE}")));
        }
        let mut cells = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Input(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::Input(format!("entry {v} in row {i} is not below {n}")));
                }
                cells.push(v as u8);
            }
        }
        Ok(Table { n, cells })
    }

    pub(crate) fn from_cells(n: usize, cells: Vec<u8>) -> Self {
        debug_assert_eq!(cells.len(), n * n);
        Table { n, cells }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.n + b] as usize
    }

    pub fn set(&mut self, a: usize, b: usize, v: usize) {
        assert!(v < self.n);
        self.cells[a * self.n + b] = v as u8;
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| self.get(a, b)).collect())
            .collect()
    }

    pub fn transpose(&self) -> Table {
        Table::from_fn(self.n, |a, b| self.get(b, a))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.get(a, b) == self.get(b, a)))
    }

    /// Relabels the carrier: `perm[old] = new`.
    pub fn permute(&self, perm: &[usize]) -> Table {
        let n = self.n;
        let mut cells = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                cells[perm[a] * n + perm[b]] = perm[self.get(a, b)] as u8;
            }
        }
        Table { n, cells }
    }

    /// First cell (row-major) where the two tables differ.
    pub fn first_difference(&self, other: &Table) -> Option<(usize, usize)> {
        assert_eq!(self.n, other.n);
        self.cells
            .iter()
            .zip(&other.cells)
            .position(|(x, y)| x != y)
            .map(|i| (i / self.n, i % self.n))
    }
}

impl fmt::Debug for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// Words that open a line of the text format and so cannot name an element.
pub(crate) const KEYWORDS: [&str; 5] = ["kind", "elements", "top", "unit", "table"];

/// Checks that element labels are usable tokens of the text format.
pub(crate) fn validate_names(names: &[String], n: usize) -> Result<()> {
    if names.len() != n {
        return Err(Error::Input(format!("{} names for {n} elements", names.len())));
    }
    for (i, name) in names.iter().enumerate() {
        if name.is_empty()
            || name.contains('#')
            || name.chars().any(char::is_whitespace)
            || KEYWORDS.contains(&name.as_str())
        {
            return Err(Error::Input(format!("invalid element name {name:?}")));
        }
        if names[..i].contains(name) {
            return Err(Error::Input(format!("duplicate element name {name:?}")));
        }
    }
    Ok(())
}

/// Labels used for generated models: the top is `1`, the rest `a`, `b`, ... in index order.
pub fn default_names(n: usize, top: usize) -> Vec<String> {
    let mut letter = 0usize;
    (0..n)
        .map(|i| {
            if i == top {
                "1".to_string()
            } else {
                let name = if letter < 26 {
                    ((b'a' + letter as u8) as char).to_string()
                } else {
                    format!("e{letter}")
                };
                letter += 1;
                name
            }
        })
        .collect()
}

/// Reads a size bound from the environment, falling back to `default` when unset or
/// unparsable.
pub(crate) fn env_bound(var: &str, default: usize) -> usize {
    std::env::var(var)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default)
}

/// All tuples of the given arity over `0..n`, in row-major (lexicographic) order.
pub(crate) fn tuples(n: usize, arity: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.checked_pow(arity as u32).unwrap_or(0);
    (0..total).map(move |mut k| {
        let mut t = vec![0; arity];
        for slot in t.iter_mut().rev() {
            *slot = k % n;
            k /= n;
        }
        t
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples_are_lexicographic() {
        let all: Vec<_> = tuples(2, 2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(tuples(3, 3).count(), 27);
        assert_eq!(tuples(4, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn from_rows_rejects_bad_shapes() {
        assert!(Table::from_rows(&[vec![0, 1], vec![1]]).is_err());
        assert!(Table::from_rows(&[vec![0, 2], vec![1, 1]]).is_err());
        assert!(Table::from_rows(&[]).is_err());
    }

    #[test]
    fn permute_composes_with_inverse() {
        let t = Table::from_fn(3, |a, b| a.min(b));
        let p = [2, 0, 1];
        let inv = [1, 2, 0];
        assert_eq!(t.permute(&p).permute(&inv), t);
    }

    #[test]
    fn default_names_put_one_at_top() {
        assert_eq!(default_names(3, 1), vec!["a", "1", "b"]);
    }
}
