use std::fmt::{self, Write as _};

use super::CoxeterError;

/// Largest supported number of generators. Generator sets are `u64` bitsets.
pub const MAX_RANK: usize = 64;

/// Marker for `m(s,t) = ∞`. Accepted by the parser only to be rejected with a
/// clear error: every group built here is finite.
pub const INFINITY: u32 = u32::MAX;

/// Symmetric table of bond orders `m(s,t)`, generators indexed from 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    rank: usize,
    entries: Vec<u32>,
}

impl CoxeterMatrix {
    /// Builds a matrix from full rows and checks every invariant.
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self, CoxeterError> {
        let rank = rows.len();
        check_rank(rank)?;
        let mut entries = Vec::with_capacity(rank * rank);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != rank {
                return Err(CoxeterError::RaggedRow { row: row + 1, len: r.len(), rank });
            }
            entries.extend(r);
        }
        let m = CoxeterMatrix { rank, entries };
        m.validate()?;
        Ok(m)
    }

    /// Builds a matrix from 0-based bonds; unlisted pairs default to 2.
    pub fn from_bonds(rank: usize, bonds: &[(usize, usize, u32)]) -> Result<Self, CoxeterError> {
        check_rank(rank)?;
        let mut rows = vec![vec![2u32; rank]; rank];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(i, j, m) in bonds {
            if i >= rank || j >= rank {
                return Err(CoxeterError::GeneratorOutOfRange { index: i.max(j) + 1, rank });
            }
            rows[i][j] = m;
            rows[j][i] = m;
        }
        Self::new(rows)
    }

    /// The rank-0 matrix of the trivial group.
    pub(crate) fn empty() -> Self {
        CoxeterMatrix { rank: 0, entries: Vec::new() }
    }

    /// `A_n`: the symmetric group on `n + 1` points.
    pub fn type_a(n: usize) -> Result<Self, CoxeterError> {
        let bonds: Vec<_> = (1..n).map(|i| (i - 1, i, 3)).collect();
        Self::from_bonds(n, &bonds)
    }

    /// `B_n` with the 4-bond between generators 1 and 2.
    pub fn type_b(n: usize) -> Result<Self, CoxeterError> {
        if n < 2 {
            return Err(CoxeterError::Unsupported(format!("B_{n} needs rank at least 2")));
        }
        let mut bonds = vec![(0, 1, 4)];
        bonds.extend((2..n).map(|i| (i - 1, i, 3)));
        Self::from_bonds(n, &bonds)
    }

    /// The dihedral group `I_2(m)` of order `2m`.
    pub fn dihedral(m: u32) -> Result<Self, CoxeterError> {
        Self::from_bonds(2, &[(0, 1, m)])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `m(s_i, s_j)` for 0-based indices.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.rank + j]
    }

    fn validate(&self) -> Result<(), CoxeterError> {
        for i in 0..self.rank {
            for j in 0..self.rank {
                let m = self.get(i, j);
                if m == INFINITY {
                    return Err(CoxeterError::Infinite { i: i + 1, j: j + 1 });
                }
                if i == j {
                    if m != 1 {
                        return Err(CoxeterError::Diagonal { i: i + 1, m });
                    }
                } else {
                    if m < 2 {
                        return Err(CoxeterError::OffDiagonal { i: i + 1, j: j + 1, m });
                    }
                    let back = self.get(j, i);
                    if back != m {
                        return Err(CoxeterError::Asymmetric { i: i + 1, j: j + 1, a: m, b: back });
                    }
                }
            }
        }
        Ok(())
    }

    /// Parses the text format: `rank n`, then `i j m` lines (1-based).
    /// Blank lines and `#` comments are ignored. `inf` denotes ∞.
    pub fn parse(text: &str) -> Result<Self, CoxeterError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, strip_comment(l)))
            .filter(|(_, l)| !l.is_empty());
        let (first_no, first) = lines.next().ok_or(CoxeterError::Parse {
            line: 1,
            message: "empty input, expected `rank n`".into(),
        })?;
        let rank = parse_rank_line(first_no, first)?;
        let mut table = BondTable::new(rank)?;
        for (no, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(CoxeterError::Parse {
                    line: no,
                    message: format!("expected `i j m`, found `{line}`"),
                });
            }
            table.set_bond(no, fields[0], fields[1], fields[2])?;
        }
        table.finish()
    }

    /// Serializes to the text format accepted by [`CoxeterMatrix::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("rank {}\n", self.rank);
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                let m = self.get(i, j);
                if m != 2 {
                    let _ = writeln!(out, "{} {} {}", i + 1, j + 1, m);
                }
            }
        }
        out
    }
}

impl fmt::Display for CoxeterMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rank {
            let row: Vec<String> = (0..self.rank).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

fn check_rank(rank: usize) -> Result<(), CoxeterError> {
    if rank == 0 {
        return Err(CoxeterError::EmptyMatrix);
    }
    if rank > MAX_RANK {
        return Err(CoxeterError::RankTooLarge(rank));
    }
    Ok(())
}

pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => line[..i].trim(),
        None => line.trim(),
    }
}

pub(crate) fn parse_rank_line(line_no: usize, line: &str) -> Result<usize, CoxeterError> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    match fields.as_slice() {
        ["rank", n] => n.parse::<usize>().map_err(|_| CoxeterError::Parse {
            line: line_no,
            message: format!("invalid rank `{n}`"),
        }),
        _ => Err(CoxeterError::Parse { line: line_no, message: format!("expected `rank n`, found `{line}`") }),
    }
}

/// Accumulates `i j m` lines, remembering which entries were given explicitly
/// so that contradictory listings surface as asymmetry.
pub(crate) struct BondTable {
    rank: usize,
    rows: Vec<Vec<u32>>,
    given: Vec<Vec<bool>>,
}

impl BondTable {
    pub(crate) fn new(rank: usize) -> Result<Self, CoxeterError> {
        check_rank(rank)?;
        let mut rows = vec![vec![2u32; rank]; rank];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 1;
        }
        Ok(BondTable { rank, rows, given: vec![vec![false; rank]; rank] })
    }

    pub(crate) fn set_bond(&mut self, line: usize, i: &str, j: &str, m: &str) -> Result<(), CoxeterError> {
        let bad = |what: &str| CoxeterError::Parse { line, message: what.to_string() };
        let i: usize = i.parse().map_err(|_| bad(&format!("invalid generator index `{i}`")))?;
        let j: usize = j.parse().map_err(|_| bad(&format!("invalid generator index `{j}`")))?;
        let m: u32 = match m {
            "inf" | "∞" => INFINITY,
            _ => m.parse().map_err(|_| bad(&format!("invalid bond order `{m}`")))?,
        };
        for idx in [i, j] {
            if idx == 0 || idx > self.rank {
                return Err(CoxeterError::GeneratorOutOfRange { index: idx, rank: self.rank });
            }
        }
        let (i, j) = (i - 1, j - 1);
        self.rows[i][j] = m;
        self.given[i][j] = true;
        if !self.given[j][i] {
            self.rows[j][i] = m;
        }
        Ok(())
    }

    pub(crate) fn finish(self) -> Result<CoxeterMatrix, CoxeterError> {
        CoxeterMatrix::new(self.rows)
    }
}
