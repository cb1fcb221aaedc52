//! Faithful permutation models for the irreducible families.
//!
//! Every component acts on its own block of points `offset..offset + degree`:
//!
//! * `A_n` on `n + 1` points, `s_i` swapping points `i-1, i`.
//! * `B_n` on `2n` points, `+k` stored at `k-1` and `-k` at `n+k-1`.
//!   The node at the 4-bond end acts as the sign change of the first entry.
//! * `I_2(m)` on the `m` vertices of a polygon, `a: i ↦ -i`, `b: i ↦ 1-i`.

use std::collections::VecDeque;

use super::{CoxeterError, CoxeterMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    /// Rank `n`, symmetric group on `n + 1` points. `A(0)` is the trivial group.
    A(usize),
    /// Rank `n >= 2`, signed permutations of `n` letters.
    B(usize),
    /// `I_2(m)` for `m >= 5`. Smaller `m` are `A_1 × A_1`, `A_2`, `B_2`.
    Dihedral(u32),
}

impl ComponentKind {
    pub fn rank(&self) -> usize {
        match *self {
            ComponentKind::A(n) | ComponentKind::B(n) => n,
            ComponentKind::Dihedral(_) => 2,
        }
    }

    pub fn degree(&self) -> usize {
        match *self {
            ComponentKind::A(n) => n + 1,
            ComponentKind::B(n) => 2 * n,
            ComponentKind::Dihedral(m) => m as usize,
        }
    }

    pub fn order(&self) -> u128 {
        match *self {
            ComponentKind::A(n) => factorial(n as u128 + 1),
            ComponentKind::B(n) => (1u128 << n) * factorial(n as u128),
            ComponentKind::Dihedral(m) => 2 * m as u128,
        }
    }

    pub fn name(&self) -> String {
        match *self {
            ComponentKind::A(n) => format!("A{n}"),
            ComponentKind::B(n) => format!("B{n}"),
            ComponentKind::Dihedral(m) => format!("I2({m})"),
        }
    }
}

fn factorial(n: u128) -> u128 {
    (1..=n).product::<u128>().max(1)
}

#[derive(Debug, Clone)]
pub(crate) struct Component {
    pub kind: ComponentKind,
    /// `nodes[p]` is the generator index sitting at model position `p`.
    pub nodes: Vec<usize>,
    pub offset: usize,
    /// Dihedral only: length of the element indexed by `rotation + m * flip`.
    pub dihedral_lengths: Vec<u32>,
}

impl Component {
    pub(crate) fn new(kind: ComponentKind, nodes: Vec<usize>, offset: usize) -> Self {
        let mut c = Component { kind, nodes, offset, dihedral_lengths: Vec::new() };
        if let ComponentKind::Dihedral(m) = kind {
            c.dihedral_lengths = dihedral_length_table(m);
        }
        c
    }

    pub fn degree(&self) -> usize {
        self.kind.degree()
    }

    /// Image of local point `p` under generator at position `pos`.
    pub fn generator_image(&self, pos: usize, p: usize) -> usize {
        match self.kind {
            ComponentKind::A(_) => {
                if p == pos {
                    pos + 1
                } else if p == pos + 1 {
                    pos
                } else {
                    p
                }
            }
            ComponentKind::B(n) => {
                if pos == 0 {
                    if p == 0 {
                        n
                    } else if p == n {
                        0
                    } else {
                        p
                    }
                } else {
                    let (a, b) = (pos - 1, pos);
                    let (c, d) = (n + pos - 1, n + pos);
                    match p {
                        _ if p == a => b,
                        _ if p == b => a,
                        _ if p == c => d,
                        _ if p == d => c,
                        _ => p,
                    }
                }
            }
            ComponentKind::Dihedral(m) => {
                let m = m as usize;
                if pos == 0 {
                    (m - p) % m
                } else {
                    (m + 1 - p) % m
                }
            }
        }
    }

    /// `ℓ(w)` for the restriction of the point map to this block.
    pub fn length(&self, local: &[u8]) -> u32 {
        let at = |i: usize| local[i] as usize - self.offset;
        match self.kind {
            ComponentKind::A(n) => {
                let mut inv = 0;
                for i in 0..=n {
                    for j in i + 1..=n {
                        if at(i) > at(j) {
                            inv += 1;
                        }
                    }
                }
                inv
            }
            ComponentKind::B(n) => {
                let vals: Vec<i64> = (0..n).map(|i| signed_value(at(i), n)).collect();
                let mut len = 0u32;
                for i in 0..n {
                    for j in i + 1..n {
                        if vals[i] > vals[j] {
                            len += 1;
                        }
                    }
                    if vals[i] < 0 {
                        len += (-vals[i]) as u32;
                    }
                }
                len
            }
            ComponentKind::Dihedral(m) => {
                let m = m as usize;
                let k = at(0);
                let flip = usize::from(at(1) == (k + m - 1) % m);
                self.dihedral_lengths[k + m * flip]
            }
        }
    }

    /// Whether `ℓ(w s) < ℓ(w)` for the generator at position `pos`.
    pub fn is_right_descent(&self, local: &[u8], pos: usize) -> bool {
        let at = |i: usize| local[i] as usize - self.offset;
        match self.kind {
            ComponentKind::A(_) => at(pos) > at(pos + 1),
            ComponentKind::B(n) => {
                if pos == 0 {
                    signed_value(at(0), n) < 0
                } else {
                    signed_value(at(pos - 1), n) > signed_value(at(pos), n)
                }
            }
            ComponentKind::Dihedral(_) => {
                let mut moved = local.to_vec();
                for (p, slot) in moved.iter_mut().enumerate() {
                    let q = self.generator_image(pos, p);
                    *slot = local[q];
                }
                self.length(&moved) < self.length(local)
            }
        }
    }
}

fn signed_value(point: usize, n: usize) -> i64 {
    if point < n {
        point as i64 + 1
    } else {
        -((point - n) as i64 + 1)
    }
}

/// Lengths of the `2m` elements of `I_2(m)` by BFS on the Cayley graph,
/// indexed by `rotation + m * flip` where rotation is the image of vertex 0.
fn dihedral_length_table(m: u32) -> Vec<u32> {
    let m = m as usize;
    let key = |perm: &[usize]| {
        let k = perm[0];
        k + m * usize::from(perm[1] == (k + m - 1) % m)
    };
    let gens: [Vec<usize>; 2] = [(0..m).map(|p| (m - p) % m).collect(), (0..m).map(|p| (m + 1 - p) % m).collect()];
    let mut lengths = vec![u32::MAX; 2 * m];
    let id: Vec<usize> = (0..m).collect();
    lengths[key(&id)] = 0;
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        let l = lengths[key(&w)];
        for g in &gens {
            let next: Vec<usize> = (0..m).map(|p| w[g[p]]).collect();
            let k = key(&next);
            if lengths[k] == u32::MAX {
                lengths[k] = l + 1;
                queue.push_back(next);
            }
        }
    }
    lengths
}

/// Splits the Coxeter diagram into connected components and recognises each
/// one as `A_n`, `B_n` or `I_2(m)`.
pub(crate) fn classify(matrix: &CoxeterMatrix) -> Result<Vec<Component>, CoxeterError> {
    let rank = matrix.rank();
    let mut seen = vec![false; rank];
    let mut components = Vec::new();
    let mut offset = 0;
    for start in 0..rank {
        if seen[start] {
            continue;
        }
        let mut nodes = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < nodes.len() {
            let v = nodes[i];
            for u in 0..rank {
                if !seen[u] && u != v && matrix.get(v, u) >= 3 {
                    seen[u] = true;
                    nodes.push(u);
                }
            }
            i += 1;
        }
        nodes.sort_unstable();
        let (kind, ordered) = recognise(matrix, &nodes)?;
        let comp = Component::new(kind, ordered, offset);
        offset += comp.degree();
        components.push(comp);
    }
    if offset > u8::MAX as usize + 1 {
        return Err(CoxeterError::Unsupported(format!("permutation model needs {offset} points, limit is 256")));
    }
    Ok(components)
}

fn recognise(matrix: &CoxeterMatrix, nodes: &[usize]) -> Result<(ComponentKind, Vec<usize>), CoxeterError> {
    let label = |set: &[usize]| {
        let names: Vec<String> = set.iter().map(|i| (i + 1).to_string()).collect();
        names.join(",")
    };
    if nodes.len() == 1 {
        return Ok((ComponentKind::A(1), nodes.to_vec()));
    }
    let neighbours = |v: usize| -> Vec<usize> {
        nodes.iter().copied().filter(|&u| u != v && matrix.get(u, v) >= 3).collect()
    };
    let edge_count: usize = nodes.iter().map(|&v| neighbours(v).len()).sum::<usize>() / 2;
    let is_path = edge_count == nodes.len() - 1 && nodes.iter().all(|&v| neighbours(v).len() <= 2);
    if !is_path {
        return Err(CoxeterError::Unsupported(format!(
            "branched or cyclic diagram on generators {{{}}} (only A, B and I2(m) are modelled)",
            label(nodes)
        )));
    }
    // Walk the path from its lower-index end.
    let ends: Vec<usize> = nodes.iter().copied().filter(|&v| neighbours(v).len() == 1).collect();
    let walk = |from: usize| -> Vec<usize> {
        let mut order = vec![from];
        let mut prev = usize::MAX;
        let mut cur = from;
        while order.len() < nodes.len() {
            let next = neighbours(cur).into_iter().find(|&u| u != prev).expect("path continues");
            prev = cur;
            cur = next;
            order.push(cur);
        }
        order
    };
    let path = walk(ends[0].min(ends[1]));
    let bonds: Vec<u32> = path.windows(2).map(|w| matrix.get(w[0], w[1])).collect();
    if bonds.iter().all(|&m| m == 3) {
        return Ok((ComponentKind::A(nodes.len()), path));
    }
    if nodes.len() == 2 {
        let m = bonds[0];
        return Ok(if m == 4 { (ComponentKind::B(2), path) } else { (ComponentKind::Dihedral(m), path) });
    }
    let non_three: Vec<usize> = (0..bonds.len()).filter(|&k| bonds[k] != 3).collect();
    if non_three.len() == 1 && bonds[non_three[0]] == 4 {
        let k = non_three[0];
        if k == 0 {
            return Ok((ComponentKind::B(nodes.len()), path));
        }
        if k == bonds.len() - 1 {
            let mut rev = path;
            rev.reverse();
            return Ok((ComponentKind::B(nodes.len()), rev));
        }
    }
    Err(CoxeterError::Unsupported(format!(
        "diagram on generators {{{}}} is not of type A, B or I2(m) (bond orders {:?})",
        label(nodes),
        bonds
    )))
}
