use itertools::Itertools;

use super::{EmbeddingCertificate, Pendant};
use crate::hypercore::{EdgeId, Hypergraph, Vertex, VertexSet};

/// A core `A` with `|A| = a` such that every hyperedge has at least `r - 1`
/// vertices in `A`.
pub fn embeds_in_core(h: &Hypergraph, a: usize) -> Option<EmbeddingCertificate> {
    core_search(h, a, None).map(EmbeddingCertificate::core_only)
}

/// Like [`embeds_in_core`] but one hyperedge may have at most `r - 2`
/// vertices in `A`; it is reported as the exceptional edge.
pub fn embeds_in_core_plus(h: &Hypergraph, a: usize) -> Option<EmbeddingCertificate> {
    if let Some(cert) = embeds_in_core(h, a) {
        return Some(cert);
    }
    (0..h.edge_count()).find_map(|id| {
        core_search(h, a, Some(id)).map(|core| EmbeddingCertificate {
            core,
            exceptional: Some(h.edges()[id].clone()),
            ..EmbeddingCertificate::default()
        })
    })
}

/// Branch and propagate: pick an edge with too few core vertices; all but
/// one of its outside vertices must join the core.
fn core_search(h: &Hypergraph, a: usize, skip: Option<EdgeId>) -> Option<VertexSet> {
    if a > h.n() {
        return None;
    }
    let mut in_core = vec![false; h.n() + 1];
    if !extend_core(h, a, skip, &mut in_core, 0) {
        return None;
    }
    let mut core: VertexSet = (1..=h.n()).filter(|&v| in_core[v]).collect();
    for v in 1..=h.n() {
        if core.len() == a {
            break;
        }
        core.insert(v);
    }
    Some(core)
}

fn extend_core(h: &Hypergraph, a: usize, skip: Option<EdgeId>, in_core: &mut [bool], size: usize) -> bool {
    let r = h.r();
    let pending = h
        .edges()
        .iter()
        .enumerate()
        .find(|&(id, e)| Some(id) != skip && e.iter().filter(|&&v| in_core[v]).count() + 1 < r);
    let Some((_, e)) = pending else {
        return true;
    };
    let outside: Vec<Vertex> = e.iter().copied().filter(|&v| !in_core[v]).collect();
    let need = outside.len() - 1;
    if size + need > a {
        return false;
    }
    for (i, _) in outside.iter().enumerate() {
        for (j, &v) in outside.iter().enumerate() {
            in_core[v] = i != j;
        }
        if extend_core(h, a, skip, in_core, size + need) {
            return true;
        }
    }
    for &v in &outside {
        in_core[v] = false;
    }
    false
}

/// A core of size `a` and blocks of sizes `bs` such that every hyperedge has
/// at least `r - 1` core vertices or lies inside `A ∪ B_i` for some `i`.
/// Requires `a + Σb <= n`.
pub fn embeds_in_core_block(h: &Hypergraph, a: usize, bs: &[usize]) -> Option<EmbeddingCertificate> {
    let edges: Vec<&[Vertex]> = h.edges().iter().map(Vec::as_slice).collect();
    let allowed = vec![true; h.n() + 1];
    block_search(h, &edges, &allowed, &VertexSet::new(), a, bs).map(|(core, blocks)| EmbeddingCertificate {
        core,
        blocks,
        ..EmbeddingCertificate::default()
    })
}

/// Core/block search restricted to the `allowed` vertices, covering `edges`,
/// with `required` forced into the core. Cores are tried in lexicographic
/// order.
fn block_search(
    h: &Hypergraph,
    edges: &[&[Vertex]],
    allowed: &[bool],
    required: &VertexSet,
    a: usize,
    bs: &[usize],
) -> Option<(VertexSet, Vec<VertexSet>)> {
    let r = h.r();
    let pool: Vec<Vertex> = (1..=h.n()).filter(|&v| allowed[v] && !required.contains(v)).collect();
    let total: usize = bs.iter().sum();
    if required.len() > a || pool.len() + required.len() < a + total {
        return None;
    }
    for extra in pool.iter().copied().combinations(a - required.len()) {
        let core: VertexSet = required.iter().chain(extra).collect();
        let light: Vec<&[Vertex]> = edges
            .iter()
            .copied()
            .filter(|e| e.iter().filter(|&&v| core.contains(v)).count() + 1 < r)
            .collect();
        if light.is_empty() && bs.is_empty() {
            return Some((core, Vec::new()));
        }
        let comps = light_components(h.n(), &core, &light);
        if let Some(blocks) = pack_blocks(&comps, bs, allowed, &core) {
            return Some((core, blocks));
        }
    }
    None
}

/// Connected components formed by the non-core vertices of light edges.
fn light_components(n: usize, core: &VertexSet, light: &[&[Vertex]]) -> Vec<Vec<Vertex>> {
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut touched = vec![false; n + 1];
    for e in light {
        let mut outs = e.iter().copied().filter(|&v| !core.contains(v));
        let Some(first) = outs.next() else { continue };
        touched[first] = true;
        for v in outs {
            touched[v] = true;
            let (x, y) = (find(&mut parent, first), find(&mut parent, v));
            parent[y] = x;
        }
    }
    let mut by_root: Vec<Vec<Vertex>> = vec![Vec::new(); n + 1];
    for v in (1..=n).filter(|&v| touched[v]) {
        let root = find(&mut parent, v);
        by_root[root].push(v);
    }
    let mut comps: Vec<Vec<Vertex>> = by_root.into_iter().filter(|c| !c.is_empty()).collect();
    comps.sort_by(|x, y| y.len().cmp(&x.len()).then(x[0].cmp(&y[0])));
    comps
}

/// Bin-packs the components into blocks of the given capacities, then pads
/// every block with the smallest unused allowed vertices.
fn pack_blocks(comps: &[Vec<Vertex>], bs: &[usize], allowed: &[bool], core: &VertexSet) -> Option<Vec<VertexSet>> {
    fn assign(i: usize, comps: &[Vec<Vertex>], room: &mut [usize], slot: &mut [usize]) -> bool {
        if i == comps.len() {
            return true;
        }
        let size = comps[i].len();
        let mut tried: Vec<usize> = Vec::new();
        for j in 0..room.len() {
            if room[j] < size || tried.contains(&room[j]) {
                continue;
            }
            tried.push(room[j]);
            room[j] -= size;
            slot[i] = j;
            if assign(i + 1, comps, room, slot) {
                return true;
            }
            room[j] += size;
        }
        false
    }
    let mut room = bs.to_vec();
    let mut slot = vec![0; comps.len()];
    if !assign(0, comps, &mut room, &mut slot) {
        return None;
    }
    let mut blocks: Vec<VertexSet> = vec![VertexSet::new(); bs.len()];
    let mut used = vec![false; allowed.len()];
    for (comp, &j) in comps.iter().zip(&slot) {
        for &v in comp {
            blocks[j].insert(v);
            used[v] = true;
        }
    }
    let mut spare = (1..allowed.len()).filter(|&v| allowed[v] && !used[v] && !core.contains(v));
    for (block, &b) in blocks.iter_mut().zip(bs) {
        while block.len() < b {
            block.insert(spare.next()?);
        }
    }
    Some(blocks)
}

/// Membership in the pendant class: an inner part embedding in
/// `H_{n,a,bs}` plus pendant hyperedges `A'_j ∪ D_j`, where the `D_j` are
/// disjoint sets of at least two vertices met by no other hyperedge and
/// `A'_j ⊆ A`. Exhaustive over the possible pendant sets.
pub fn in_pendant_class(h: &Hypergraph, a: usize, bs: &[usize]) -> Option<EmbeddingCertificate> {
    let degrees = h.degrees();
    // Pendant candidates: edges with at least two degree-one vertices.
    let candidates: Vec<(EdgeId, Vec<Vertex>)> = h
        .edges()
        .iter()
        .enumerate()
        .filter_map(|(id, e)| {
            let ones: Vec<Vertex> = e.iter().copied().filter(|&v| degrees[v - 1] == 1).collect();
            (ones.len() >= 2).then_some((id, ones))
        })
        .collect();
    let mut chosen: Vec<Option<Vec<Vertex>>> = vec![None; candidates.len()];
    pendant_dfs(h, a, bs, &candidates, 0, &mut chosen)
}

fn pendant_dfs(
    h: &Hypergraph,
    a: usize,
    bs: &[usize],
    candidates: &[(EdgeId, Vec<Vertex>)],
    i: usize,
    chosen: &mut [Option<Vec<Vertex>>],
) -> Option<EmbeddingCertificate> {
    if i == candidates.len() {
        return pendant_leaf(h, a, bs, candidates, chosen);
    }
    let ones = &candidates[i].1;
    // Larger pendant sets first, then the edge kept in the inner part.
    for size in (2..=ones.len()).rev() {
        for d in ones.iter().copied().combinations(size) {
            chosen[i] = Some(d);
            if let Some(cert) = pendant_dfs(h, a, bs, candidates, i + 1, chosen) {
                return Some(cert);
            }
        }
    }
    chosen[i] = None;
    pendant_dfs(h, a, bs, candidates, i + 1, chosen)
}

fn pendant_leaf(
    h: &Hypergraph,
    a: usize,
    bs: &[usize],
    candidates: &[(EdgeId, Vec<Vertex>)],
    chosen: &[Option<Vec<Vertex>>],
) -> Option<EmbeddingCertificate> {
    let mut allowed = vec![true; h.n() + 1];
    let mut required = VertexSet::new();
    let mut pendant_ids = Vec::new();
    let mut pendants = Vec::new();
    for ((id, _), d) in candidates.iter().zip(chosen) {
        let Some(d) = d else { continue };
        let outer: VertexSet = d.iter().copied().collect();
        let core_part: VertexSet = h.edges()[*id].iter().copied().filter(|&v| !outer.contains(v)).collect();
        for v in outer.iter() {
            allowed[v] = false;
        }
        for v in core_part.iter() {
            required.insert(v);
        }
        pendant_ids.push(*id);
        pendants.push(Pendant { core_part, outer });
    }
    let inner: Vec<&[Vertex]> = h
        .edges()
        .iter()
        .enumerate()
        .filter(|(id, _)| !pendant_ids.contains(id))
        .map(|(_, e)| e.as_slice())
        .collect();
    let (core, blocks) = block_search(h, &inner, &allowed, &required, a, bs)?;
    Some(EmbeddingCertificate {
        core,
        blocks,
        exceptional: None,
        pendants,
    })
}

/// [`in_pendant_class`] over every block list with parts at least 2 and
/// total at most `max_block_total`, smallest totals first.
pub fn in_pendant_class_any(h: &Hypergraph, a: usize, max_block_total: usize) -> Option<EmbeddingCertificate> {
    fn parts(total: usize, max_part: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if total == 0 {
            out.push(acc.clone());
            return;
        }
        for p in (2..=max_part.min(total)).rev() {
            acc.push(p);
            parts(total - p, p, acc, out);
            acc.pop();
        }
    }
    (0..=max_block_total).find_map(|total| {
        let mut lists = Vec::new();
        parts(total, total, &mut Vec::new(), &mut lists);
        lists.iter().find_map(|bs| in_pendant_class(h, a, bs))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_extremal, build_extremal_plus, ConstructionParams, PlusVariant};

    fn brute_core(h: &Hypergraph, a: usize) -> bool {
        (1..=h.n()).combinations(a).any(|core| {
            h.edges()
                .iter()
                .all(|e| e.iter().filter(|v| core.contains(v)).count() + 1 >= h.r())
        })
    }

    #[test]
    fn core_self_embedding() {
        let h = build_extremal(&ConstructionParams::new(8, 3, vec![], 3)).unwrap();
        let cert = embeds_in_core(&h, 3).unwrap();
        assert_eq!(cert.core.as_slice(), &[1, 2, 3]);
        assert!(cert.verify(&h));
        let g = h.with_edge(&[4, 5, 6]).unwrap();
        assert!(embeds_in_core(&g, 3).is_none());
    }

    #[test]
    fn single_edge_core() {
        let h = Hypergraph::new(3, 3, [[1, 2, 3]]).unwrap();
        let cert = embeds_in_core(&h, 2).unwrap();
        assert_eq!(cert.core.len(), 2);
        assert!(cert.verify(&h));
    }

    #[test]
    fn core_matches_brute_force() {
        let all: Vec<Vec<usize>> = (1..=6).combinations(3).collect();
        for mask in (0u32..1 << 20).step_by(997) {
            let edges: Vec<&Vec<usize>> = all
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| e)
                .collect();
            let h = Hypergraph::new(6, 3, edges).unwrap();
            for a in 2..=4 {
                let got = embeds_in_core(&h, a);
                assert_eq!(got.is_some(), brute_core(&h, a), "mask {mask} a {a}");
                if let Some(c) = got {
                    assert!(c.verify(&h) && c.has_shape(a, &[]));
                }
            }
        }
    }

    #[test]
    fn plus_variant() {
        let base = ConstructionParams::new(8, 2, vec![], 3);
        let h = build_extremal_plus(&PlusVariant::new(base.clone(), vec![5, 6, 7])).unwrap();
        let cert = embeds_in_core_plus(&h, 2).unwrap();
        assert_eq!(cert.exceptional, Some(vec![5, 6, 7]));
        assert!(cert.verify(&h));
        let two = h.with_edge(&[4, 6, 8]).unwrap();
        assert!(embeds_in_core_plus(&two, 2).is_none());
        let plain = build_extremal(&base).unwrap();
        assert_eq!(embeds_in_core_plus(&plain, 2).unwrap().exceptional, None);
    }

    #[test]
    fn blocks() {
        let h = build_extremal(&ConstructionParams::new(9, 2, vec![2, 2], 3)).unwrap();
        let cert = embeds_in_core_block(&h, 2, &[2, 2]).unwrap();
        assert!(cert.verify(&h) && cert.has_shape(2, &[2, 2]));
        assert_eq!(cert.core.as_slice(), &[1, 2]);
        let g = h.with_edge(&[3, 4, 5]).unwrap();
        assert!(embeds_in_core_block(&g, 2, &[2, 2]).is_none());
        let plain = build_extremal(&ConstructionParams::new(7, 2, vec![], 3)).unwrap();
        let cert = embeds_in_core_block(&plain, 2, &[2]).unwrap();
        assert!(cert.verify(&plain) && cert.has_shape(2, &[2]));
    }

    #[test]
    fn pendant_class() {
        let base = build_extremal(&ConstructionParams::new(9, 2, vec![2], 3)).unwrap();
        let mut edges = base.edges().to_vec();
        edges.push(vec![1, 10, 11]);
        let h = Hypergraph::new(11, 3, &edges).unwrap();
        let cert = in_pendant_class(&h, 2, &[2]).unwrap();
        assert!(cert.verify(&h));
        assert_eq!(cert.pendants.len(), 1);
        assert_eq!(cert.pendants[0].outer.as_slice(), &[10, 11]);

        let mut single = base.edges().to_vec();
        single.push(vec![1, 2, 10]);
        single.push(vec![1, 10, 11]);
        let h = Hypergraph::new(11, 3, &single).unwrap();
        assert!(in_pendant_class(&h, 2, &[2]).is_none());

        edges.pop();
        edges.push(vec![3, 10, 11]);
        let h = Hypergraph::new(11, 3, &edges).unwrap();
        assert!(in_pendant_class(&h, 2, &[2]).is_none());
        assert!(in_pendant_class_any(&base, 2, 4).is_some());
    }
}
