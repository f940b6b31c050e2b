use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{GyroError, Result};
use crate::gyro::Gyrogroup;

/// Largest carrier a [`FiniteGyrogroup`] may have (subsets are `u64` masks).
pub const MAX_ORDER: usize = 64;

/// A gyrogroup on `{0, …, n-1}` given by its Cayley table. Element 0 is the
/// identity. Row `i` of the table is the left translation by `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGyrogroup {
    n: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl FiniteGyrogroup {
    /// Builds a gyrogroup from a row-major table, checking that every row and
    /// column is a permutation and that row 0 and column 0 are the identity.
    /// The gyrogroup axioms themselves are not checked here.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(GyroError::Parse {
                line: 1,
                message: "carrier must be nonempty".into(),
            });
        }
        if n > MAX_ORDER {
            return Err(GyroError::BoundExceeded { n, bound: MAX_ORDER });
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GyroError::Parse {
                    line: i + 2,
                    message: format!("row {i} has {} entries, expected {n}", row.len()),
                });
            }
            table.extend_from_slice(row);
        }
        Self::from_table(n, table)
    }

    pub fn from_table(n: usize, table: Vec<usize>) -> Result<Self> {
        if n == 0 || table.len() != n * n {
            return Err(GyroError::Parse {
                line: 1,
                message: format!("expected {} table entries, got {}", n * n, table.len()),
            });
        }
        if n > MAX_ORDER {
            return Err(GyroError::BoundExceeded { n, bound: MAX_ORDER });
        }
        for i in 0..n {
            if !is_permutation((0..n).map(|j| table[i * n + j]), n) {
                return Err(GyroError::NotPermutation {
                    kind: "row",
                    index: i,
                    n,
                });
            }
        }
        for j in 0..n {
            if !is_permutation((0..n).map(|i| table[i * n + j]), n) {
                return Err(GyroError::NotPermutation {
                    kind: "column",
                    index: j,
                    n,
                });
            }
        }
        for a in 0..n {
            if table[a] != a {
                return Err(GyroError::IdentityViolated(format!("0 ⊕ {a} ≠ {a}")));
            }
            if table[a * n] != a {
                return Err(GyroError::IdentityViolated(format!("{a} ⊕ 0 ≠ {a}")));
            }
        }
        // Columns are permutations, so each a has exactly one left inverse.
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n).find(|&b| table[b * n + a] == 0).unwrap_or(0);
        }
        Ok(Self { n, table, inverse })
    }

    /// Builds a gyrogroup from an associative group table. Every gyration of
    /// the result is the identity map.
    pub fn group_as_gyrogroup(rows: Vec<Vec<usize>>) -> Result<Self> {
        let g = Self::from_rows(rows)?;
        if let Some((x, y, z)) = g.associativity_witness() {
            return Err(GyroError::NotAssociative { x, y, z });
        }
        Ok(g)
    }

    /// The cyclic group `Z_n` under addition mod `n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(GyroError::Domain("Z_0 is not a group".into()));
        }
        let rows = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::group_as_gyrogroup(rows)
    }

    /// Direct product with coordinatewise operation. Element index is the
    /// mixed-radix number of its coordinates, first factor most significant.
    pub fn product(factors: &[FiniteGyrogroup]) -> Result<Self> {
        if factors.is_empty() {
            return Err(GyroError::EmptyProduct);
        }
        let n = factors
            .iter()
            .try_fold(1usize, |acc, f| acc.checked_mul(f.n))
            .filter(|&n| n <= MAX_ORDER)
            .ok_or(GyroError::BoundExceeded {
                n: factors.iter().map(|f| f.n).product(),
                bound: MAX_ORDER,
            })?;
        let coords: Vec<Vec<usize>> = (0..n).map(|i| Self::split(factors, i)).collect();
        let mut table = Vec::with_capacity(n * n);
        for a in &coords {
            for b in &coords {
                let c: Vec<usize> = factors
                    .iter()
                    .zip(a.iter().zip(b))
                    .map(|(f, (&x, &y))| f.op_idx(x, y))
                    .collect();
                table.push(Self::join(factors, &c));
            }
        }
        Self::from_table(n, table)
    }

    /// Coordinates of product index `i`.
    pub fn split(factors: &[FiniteGyrogroup], mut i: usize) -> Vec<usize> {
        let mut out = vec![0; factors.len()];
        for (k, f) in factors.iter().enumerate().rev() {
            out[k] = i % f.n;
            i /= f.n;
        }
        out
    }

    pub fn join(factors: &[FiniteGyrogroup], coords: &[usize]) -> usize {
        factors
            .iter()
            .zip(coords)
            .fold(0, |acc, (f, &c)| acc * f.n + c)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn op_idx(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    #[inline]
    pub fn inv_idx(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Derived gyration `⊖(x⊕y) ⊕ (x⊕(y⊕z))`.
    #[inline]
    pub fn gyr_idx(&self, x: usize, y: usize, z: usize) -> usize {
        let xy = self.op_idx(x, y);
        self.op_idx(self.inverse[xy], self.op_idx(x, self.op_idx(y, z)))
    }

    /// The permutation `z ↦ gyr[x, y](z)`.
    pub fn gyration(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.n).map(|z| self.gyr_idx(x, y, z)).collect()
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.table[a * self.n..(a + 1) * self.n]
    }

    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let xy = self.op_idx(x, y);
                for z in 0..n {
                    if self.op_idx(x, self.op_idx(y, z)) != self.op_idx(xy, z) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Parses the `.gyro` text format: first non-comment line `n`, then `n`
    /// rows of `n` space-separated indices. Lines starting with `#` are
    /// comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line_no, header) = lines.next().ok_or(GyroError::Parse {
            line: 1,
            message: "missing size line".into(),
        })?;
        let n: usize = header.parse().map_err(|_| GyroError::Parse {
            line: line_no,
            message: format!("expected carrier size, found {header:?}"),
        })?;
        if n == 0 {
            return Err(GyroError::Parse {
                line: line_no,
                message: "carrier size must be positive".into(),
            });
        }
        if n > MAX_ORDER {
            return Err(GyroError::BoundExceeded { n, bound: MAX_ORDER });
        }
        let mut table = Vec::with_capacity(n * n);
        let mut rows = 0;
        for (line_no, line) in lines {
            if rows == n {
                return Err(GyroError::Parse {
                    line: line_no,
                    message: "more rows than the declared size".into(),
                });
            }
            let row: Vec<usize> = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .ok()
                        .filter(|&v| v < n)
                        .ok_or(GyroError::Parse {
                            line: line_no,
                            message: format!("entry {tok:?} is not an index below {n}"),
                        })
                })
                .collect::<Result<_>>()?;
            if row.len() != n {
                return Err(GyroError::Parse {
                    line: line_no,
                    message: format!("row has {} entries, expected {n}", row.len()),
                });
            }
            table.extend(row);
            rows += 1;
        }
        if rows != n {
            return Err(GyroError::Parse {
                line: text.lines().count(),
                message: format!("expected {n} rows, found {rows}"),
            });
        }
        Self::from_table(n, table)
    }

    /// Renders the `.gyro` format. `parse(serialize(g)) == g`.
    pub fn serialize(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for a in 0..self.n {
            let row: Vec<String> = self.row(a).iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GyroError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

/// Parses `.gyro` bytes into a [`FiniteGyrogroup`].
pub fn load_table(bytes: &[u8]) -> Result<FiniteGyrogroup> {
    let text = std::str::from_utf8(bytes).map_err(|e| GyroError::Parse {
        line: 1,
        message: format!("not UTF-8: {e}"),
    })?;
    FiniteGyrogroup::parse(text)
}

fn is_permutation(it: impl Iterator<Item = usize>, n: usize) -> bool {
    let mut seen = 0u64;
    let mut count = 0;
    for v in it {
        if v >= n || seen & (1 << v) != 0 {
            return false;
        }
        seen |= 1 << v;
        count += 1;
    }
    count == n
}

/// Location of the K16 table: `$GYROLAB_K16` if set, otherwise the file
/// shipped in this crate's `data/` directory.
pub fn k16_path() -> PathBuf {
    std::env::var_os("GYROLAB_K16")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("data/k16.gyro"))
}

/// Loads the K16 table. `Ok(None)` when the data file is absent.
pub fn load_k16() -> Result<Option<FiniteGyrogroup>> {
    let path = k16_path();
    if !path.exists() {
        return Ok(None);
    }
    FiniteGyrogroup::load(&path).map(Some)
}

impl Gyrogroup for FiniteGyrogroup {
    type Element = usize;

    fn op(&self, a: &usize, b: &usize) -> usize {
        self.op_idx(*a, *b)
    }

    fn identity(&self) -> usize {
        0
    }

    fn inverse(&self, a: &usize) -> usize {
        self.inverse[*a]
    }

    fn approx_eq(&self, a: &usize, b: &usize) -> bool {
        a == b
    }

    fn check_domain(&self, a: &usize) -> Result<()> {
        if *a < self.n {
            Ok(())
        } else {
            Err(GyroError::Domain(format!(
                "element {a} outside carrier of size {}",
                self.n
            )))
        }
    }

    fn elements(&self) -> Option<Vec<usize>> {
        Some((0..self.n).collect())
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> usize {
        rng.gen_range(0..self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_from_text() {
        let g = FiniteGyrogroup::parse("2\n0 1\n1 0\n").unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g, FiniteGyrogroup::cyclic(2).unwrap());
    }

    #[test]
    fn comments_are_skipped() {
        let g = FiniteGyrogroup::parse("# Z2\n2\n# rows\n0 1\n1 0\n").unwrap();
        assert_eq!(g.op_idx(1, 1), 0);
    }

    #[test]
    fn duplicate_in_row_is_rejected_with_row_index() {
        let err = FiniteGyrogroup::parse("3\n0 1 2\n1 1 0\n2 0 1\n").unwrap_err();
        assert_eq!(
            err,
            GyroError::NotPermutation {
                kind: "row",
                index: 1,
                n: 3
            }
        );
    }

    #[test]
    fn column_violation_is_rejected() {
        // rows are permutations but column 1 repeats
        let err = FiniteGyrogroup::parse("3\n0 1 2\n1 2 0\n2 1 0\n").unwrap_err();
        assert!(matches!(
            err,
            GyroError::NotPermutation { kind: "column", .. }
        ));
    }

    #[test]
    fn identity_row_violation_is_rejected() {
        let err = FiniteGyrogroup::parse("2\n1 0\n0 1\n").unwrap_err();
        assert!(matches!(err, GyroError::IdentityViolated(_)));
    }

    #[test]
    fn malformed_input() {
        assert!(matches!(
            FiniteGyrogroup::parse(""),
            Err(GyroError::Parse { .. })
        ));
        assert!(matches!(
            FiniteGyrogroup::parse("x\n"),
            Err(GyroError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            FiniteGyrogroup::parse("2\n0 1\n"),
            Err(GyroError::Parse { .. })
        ));
        assert!(matches!(
            FiniteGyrogroup::parse("2\n0 2\n1 0\n"),
            Err(GyroError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            FiniteGyrogroup::parse("2\n0 1\n1 0\n0 1\n"),
            Err(GyroError::Parse { line: 4, .. })
        ));
    }

    #[test]
    fn non_associative_group_input_is_rejected() {
        let k16 = load_k16().unwrap();
        let Some(k16) = k16 else {
            eprintln!("warning: K16 data file missing, skipping");
            return;
        };
        let rows = (0..16).map(|a| k16.row(a).to_vec()).collect();
        let err = FiniteGyrogroup::group_as_gyrogroup(rows).unwrap_err();
        let GyroError::NotAssociative { x, y, z } = err else {
            panic!("unexpected error {err:?}");
        };
        assert_ne!(
            k16.op_idx(x, k16.op_idx(y, z)),
            k16.op_idx(k16.op_idx(x, y), z)
        );
    }

    #[test]
    fn z2_squared_is_the_four_group() {
        let z2 = FiniteGyrogroup::cyclic(2).unwrap();
        let v4 = FiniteGyrogroup::product(&[z2.clone(), z2]).unwrap();
        let klein = FiniteGyrogroup::group_as_gyrogroup(vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ])
        .unwrap();
        assert_eq!(v4, klein);
    }

    #[test]
    fn product_bounds() {
        assert_eq!(FiniteGyrogroup::product(&[]), Err(GyroError::EmptyProduct));
        let z16 = FiniteGyrogroup::cyclic(16).unwrap();
        assert!(matches!(
            FiniteGyrogroup::product(&[z16.clone(), z16]),
            Err(GyroError::BoundExceeded { .. })
        ));
    }

    #[test]
    fn mixed_radix_round_trip() {
        let f = [
            FiniteGyrogroup::cyclic(2).unwrap(),
            FiniteGyrogroup::cyclic(3).unwrap(),
        ];
        for i in 0..6 {
            assert_eq!(FiniteGyrogroup::join(&f, &FiniteGyrogroup::split(&f, i)), i);
        }
        assert_eq!(FiniteGyrogroup::split(&f, 4), vec![1, 1]);
    }
}
