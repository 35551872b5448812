//! Orderly generation over compact edge sets.
//!
//! A set is kept when it is lex-max in its orbit (see
//! [`compact::is_canonical`]). Deleting the last edge of such a set leaves a
//! lex-max set, so growing canonical parents by later edges only reaches
//! every class exactly once. The predicate must be hereditary: each node's
//! candidate list is the parent's, filtered.

use serde::{Deserialize, Serialize};

use super::compact::{is_canonical, EdgeSet, Universe};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub(crate) struct Node {
    #[serde(with = "hex_set")]
    pub set: EdgeSet,
    /// Later edges whose addition keeps the predicate true.
    pub addable: Vec<u8>,
    /// For each addable edge, the edges known to break the predicate when
    /// added together with it.
    #[serde(with = "hex_sets")]
    pub conflicts: Vec<EdgeSet>,
}

impl Node {
    pub fn size(&self) -> usize {
        self.set.count_ones() as usize
    }

    /// Upper bound on the size of any set below this node: the addable
    /// edges are greedily covered by groups of pairwise conflicting edges,
    /// and at most one edge per group can be added.
    pub fn bound(&self) -> usize {
        let mut groups: Vec<EdgeSet> = Vec::new();
        for (&f, &row) in self.addable.iter().zip(&self.conflicts) {
            let bit = 1u128 << f;
            match groups.iter_mut().find(|g| **g & !row == 0) {
                Some(g) => *g |= bit,
                None => groups.push(bit),
            }
        }
        self.size() + groups.len()
    }
}

pub(crate) trait Walker {
    /// Hereditary predicate for `child`, which was obtained by adding `edge`
    /// to a set that satisfies it.
    fn allow(&self, u: &Universe, child: EdgeSet, edge: usize) -> bool;
    /// Called once per generated set; `false` skips its subtree.
    fn visit(&mut self, u: &Universe, node: &Node) -> bool;
    /// Subtrees whose [`Node::bound`] is below this are skipped.
    fn floor(&self) -> usize {
        0
    }
    fn stopped(&self) -> bool {
        false
    }
}

pub(crate) fn root<W: Walker>(u: &Universe, w: &W) -> Node {
    let addable: Vec<u8> = (0..u.len())
        .filter(|&g| w.allow(u, 1u128 << g, g))
        .map(|g| g as u8)
        .collect();
    Node {
        set: 0,
        conflicts: vec![0; addable.len()],
        addable,
    }
}

/// Depth-first walk. Nodes with exactly `split` edges are pushed onto
/// `frontier` unvisited instead of being expanded.
///
/// All children's candidate lists are computed before descending. A
/// candidate dropped from child `f`'s list conflicts with `f`, and since the
/// predicate is hereditary that conflict holds in every descendant too.
pub(crate) fn walk<W: Walker>(
    u: &Universe,
    node: &Node,
    w: &mut W,
    up_to_iso: bool,
    split: Option<usize>,
    frontier: &mut Vec<Node>,
) {
    if split == Some(node.size()) {
        frontier.push(node.clone());
        return;
    }
    if w.stopped() || !w.visit(u, node) {
        return;
    }
    let m = node.size();
    let len = node.addable.len();
    let mut rows = node.conflicts.clone();
    let mut children: Vec<(EdgeSet, Vec<u8>)> = Vec::new();
    for (i, &f) in node.addable.iter().enumerate() {
        if m + 1 + (len - i - 1) < w.floor() || w.stopped() {
            break;
        }
        let child = node.set | 1u128 << f;
        if up_to_iso && !is_canonical(u, child) {
            continue;
        }
        let mut addable = Vec::new();
        for (j, &g) in node.addable.iter().enumerate().skip(i + 1) {
            if w.allow(u, child | 1u128 << g, g as usize) {
                addable.push(g);
            } else {
                rows[i] |= 1u128 << g;
                rows[j] |= 1u128 << f;
            }
        }
        children.push((child, addable));
    }
    let refined = Node {
        set: node.set,
        addable: node.addable.clone(),
        conflicts: rows.clone(),
    };
    if refined.bound() < w.floor() {
        return;
    }
    for (child, addable) in children {
        if w.stopped() {
            return;
        }
        let mask: EdgeSet = addable.iter().fold(0, |s, &g| s | 1u128 << g);
        let conflicts = addable
            .iter()
            .map(|&g| {
                let j = node.addable.iter().position(|&x| x == g).expect("candidate of parent");
                rows[j] & mask
            })
            .collect();
        let next = Node {
            set: child,
            addable,
            conflicts,
        };
        if next.bound() < w.floor() {
            continue;
        }
        walk(u, &next, w, up_to_iso, split, frontier);
    }
}

/// Position of `edge` among the members of `set`.
pub(crate) fn local_index(set: EdgeSet, edge: usize) -> usize {
    (set & ((1u128 << edge) - 1)).count_ones() as usize
}

pub(crate) fn set_to_hex(set: EdgeSet) -> String {
    format!("{set:032x}")
}

pub(crate) fn set_from_hex(s: &str) -> Option<EdgeSet> {
    u128::from_str_radix(s, 16).ok()
}

mod hex_sets {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(sets: &[u128], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(sets.iter().map(|&x| super::set_to_hex(x)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<u128>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| super::set_from_hex(s).ok_or_else(|| serde::de::Error::custom("bad edge set")))
            .collect()
    }
}

mod hex_set {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(set: &u128, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::set_to_hex(*set))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u128, D::Error> {
        let s = String::deserialize(d)?;
        super::set_from_hex(&s).ok_or_else(|| serde::de::Error::custom("bad edge set"))
    }
}
