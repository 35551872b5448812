//! Depth-first search over vertex sequences in the 2-shadow.
//!
//! Consecutive vertices must share a hyperedge, and the pairs of a sequence
//! must admit distinct representative hyperedges. That is kept as a bipartite
//! matching (pairs against edges) extended by one augmenting path per pushed
//! pair; a failed augmentation means no extension can succeed either, so the
//! branch is cut. Vertices that are twins (their transposition is an
//! automorphism) are only used in increasing id order, which keeps the
//! lexicographically smallest optimum reachable.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use crate::hypercore::{twin_classes, EdgeId, Hypergraph, Vertex};

const FREE: usize = usize::MAX;
const FLUSH_EVERY: u64 = 256;

/// Pairwise co-membership: for each vertex, its neighbours in ascending order
/// with the ids of the hyperedges containing both.
pub(crate) struct Shadow {
    adj: Vec<Vec<(Vertex, Vec<EdgeId>)>>,
}

impl Shadow {
    pub(crate) fn new(h: &Hypergraph) -> Self {
        let mut maps: Vec<BTreeMap<Vertex, Vec<EdgeId>>> = vec![BTreeMap::new(); h.n() + 1];
        for (id, e) in h.edges().iter().enumerate() {
            for &u in e {
                for &v in e {
                    if u != v {
                        maps[u].entry(v).or_default().push(id);
                    }
                }
            }
        }
        Shadow {
            adj: maps.into_iter().map(|m| m.into_iter().collect()).collect(),
        }
    }

    pub(crate) fn neighbours(&self, v: Vertex) -> &[(Vertex, Vec<EdgeId>)] {
        &self.adj[v]
    }

    pub(crate) fn common(&self, u: Vertex, v: Vertex) -> &[EdgeId] {
        match self.adj[u].binary_search_by_key(&v, |(w, _)| *w) {
            Ok(i) => &self.adj[u][i].1,
            Err(_) => &[],
        }
    }
}

/// Node budget shared by all workers of one search.
pub(crate) struct Budget {
    limit: u64,
    used: AtomicU64,
    exhausted: AtomicBool,
}

impl Budget {
    pub(crate) fn new(limit: Option<u64>) -> Self {
        Budget {
            limit: limit.unwrap_or(u64::MAX),
            used: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
        }
    }

    fn charge(&self, nodes: u64) -> bool {
        let total = self.used.fetch_add(nodes, Ordering::Relaxed) + nodes;
        if total > self.limit {
            self.exhausted.store(true, Ordering::Relaxed);
        }
        !self.exhausted.load(Ordering::Relaxed)
    }

    pub(crate) fn exhausted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed)
    }

    pub(crate) fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
}

/// What a path/cycle search is looking for.
#[derive(Clone, Copy)]
pub(crate) enum Goal<'s> {
    /// Stop at the first sequence of exactly this length.
    Exact(usize),
    /// Maximise length; `shared` is the best length over all workers.
    Longest(&'s AtomicUsize),
}

/// Best sequence found by one worker.
#[derive(Clone, Debug, Default)]
pub(crate) struct Found {
    pub(crate) len: usize,
    pub(crate) seq: Option<Vec<Vertex>>,
}

pub(crate) struct Core<'a> {
    shadow: &'a Shadow,
    budget: &'a Budget,
    n: usize,
    allowed: Vec<bool>,
    twin_prev: Vec<Option<Vertex>>,
    used: Vec<bool>,
    free_count: usize,
    seq: Vec<Vertex>,
    pair_cands: Vec<&'a [EdgeId]>,
    pair_edge: Vec<EdgeId>,
    owner: Vec<usize>,
    mark: Vec<u32>,
    stamp: u32,
    pending: u64,
    seen: Vec<u32>,
    seen_stamp: u32,
    stack: Vec<Vertex>,
}

impl<'a> Core<'a> {
    pub(crate) fn new(
        h: &Hypergraph,
        shadow: &'a Shadow,
        budget: &'a Budget,
        excluded: &[Vertex],
        use_twins: bool,
    ) -> Self {
        let n = h.n();
        let mut allowed = vec![true; n + 1];
        allowed[0] = false;
        for &v in excluded {
            if v >= 1 && v <= n {
                allowed[v] = false;
            }
        }
        let mut twin_prev = vec![None; n + 1];
        if use_twins {
            let rep = twin_classes(h);
            // Chain allowed members of each class in increasing order.
            let mut last_in_class: Vec<Option<Vertex>> = vec![None; n + 1];
            for v in 1..=n {
                if !allowed[v] {
                    continue;
                }
                let class = rep[v - 1];
                twin_prev[v] = last_in_class[class];
                last_in_class[class] = Some(v);
            }
        }
        let free_count = allowed.iter().filter(|&&a| a).count();
        Core {
            shadow,
            budget,
            n,
            allowed,
            twin_prev,
            used: vec![false; n + 1],
            free_count,
            seq: Vec::with_capacity(n),
            pair_cands: Vec::with_capacity(n),
            pair_edge: Vec::with_capacity(n),
            owner: vec![FREE; h.edge_count()],
            mark: vec![0; h.edge_count()],
            stamp: 0,
            pending: 0,
            seen: vec![0; n + 1],
            seen_stamp: 0,
            stack: Vec::with_capacity(n),
        }
    }

    fn tick(&mut self) -> Flow {
        self.pending += 1;
        if self.pending >= FLUSH_EVERY {
            let ok = self.budget.charge(self.pending);
            self.pending = 0;
            if !ok {
                return Flow::Stop;
            }
        }
        Flow::Continue
    }

    pub(crate) fn flush(&mut self) {
        if self.pending > 0 {
            self.budget.charge(self.pending);
            self.pending = 0;
        }
    }

    fn assign(&mut self, p: usize) -> bool {
        let cands = self.pair_cands[p];
        for &e in cands {
            if self.mark[e] == self.stamp {
                continue;
            }
            self.mark[e] = self.stamp;
            let o = self.owner[e];
            if o == FREE || self.assign(o) {
                self.owner[e] = p;
                self.pair_edge[p] = e;
                return true;
            }
        }
        false
    }

    fn push_pair(&mut self, cands: &'a [EdgeId]) -> bool {
        let p = self.pair_cands.len();
        self.pair_cands.push(cands);
        self.pair_edge.push(FREE);
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.stamp = 1;
        }
        if self.assign(p) {
            true
        } else {
            self.pair_cands.pop();
            self.pair_edge.pop();
            false
        }
    }

    fn pop_pair(&mut self) {
        let e = self.pair_edge.pop().expect("pair to pop");
        self.pair_cands.pop();
        self.owner[e] = FREE;
    }

    fn usable(&self, u: Vertex, floor: Vertex) -> bool {
        u > floor && self.allowed[u] && !self.used[u] && self.twin_prev[u].is_none_or(|w| self.used[w])
    }

    fn enter(&mut self, v: Vertex) {
        self.used[v] = true;
        self.free_count -= 1;
        self.seq.push(v);
    }

    fn leave(&mut self) {
        let v = self.seq.pop().expect("vertex to pop");
        self.used[v] = false;
        self.free_count += 1;
    }

    /// Unused allowed vertices above `floor` reachable from `from` in the
    /// shadow.
    fn reachable(&mut self, from: Vertex, floor: Vertex) -> usize {
        self.seen_stamp = self.seen_stamp.wrapping_add(1);
        if self.seen_stamp == 0 {
            self.seen.iter_mut().for_each(|s| *s = 0);
            self.seen_stamp = 1;
        }
        let stamp = self.seen_stamp;
        self.stack.clear();
        self.stack.push(from);
        self.seen[from] = stamp;
        let mut count = 0;
        while let Some(v) = self.stack.pop() {
            for &(u, _) in self.shadow.neighbours(v) {
                if u > floor && self.allowed[u] && !self.used[u] && self.seen[u] != stamp {
                    self.seen[u] = stamp;
                    count += 1;
                    self.stack.push(u);
                }
            }
        }
        count
    }

    fn starts_ok(&self, s: Vertex) -> bool {
        self.allowed[s] && self.twin_prev[s].is_none()
    }

    /// Searches paths starting at `start`.
    pub(crate) fn paths_from(&mut self, start: Vertex, goal: Goal<'_>, found: &mut Found) -> bool {
        if !self.starts_ok(start) {
            return true;
        }
        self.enter(start);
        let flow = self.grow_path(goal, found);
        self.leave();
        self.flush();
        flow == Flow::Continue
    }

    fn grow_path(&mut self, goal: Goal<'_>, found: &mut Found) -> Flow {
        if self.tick() == Flow::Stop {
            return Flow::Stop;
        }
        let len = self.seq.len() - 1;
        match goal {
            Goal::Exact(k) => {
                if len == k {
                    found.len = len;
                    found.seq = Some(self.seq.clone());
                    return Flow::Stop;
                }
            }
            Goal::Longest(shared) => {
                if len > found.len || found.seq.is_none() {
                    found.len = len;
                    found.seq = Some(self.seq.clone());
                    shared.fetch_max(len, Ordering::Relaxed);
                }
            }
        }
        let last = *self.seq.last().expect("non-empty");
        if path_pruned(goal, len, self.free_count, found) {
            return Flow::Continue;
        }
        let reach = self.reachable(last, 0);
        if path_pruned(goal, len, reach, found) {
            return Flow::Continue;
        }
        let shadow = self.shadow;
        for (u, cands) in shadow.neighbours(last) {
            let u = *u;
            if !self.usable(u, 0) || !self.push_pair(cands) {
                continue;
            }
            self.enter(u);
            let flow = self.grow_path(goal, found);
            self.leave();
            self.pop_pair();
            if flow == Flow::Stop {
                return Flow::Stop;
            }
        }
        Flow::Continue
    }

    /// Searches cycles whose smallest vertex is `start`.
    pub(crate) fn cycles_from(&mut self, start: Vertex, min_len: usize, goal: Goal<'_>, found: &mut Found) -> bool {
        if !self.starts_ok(start) {
            return true;
        }
        self.enter(start);
        let flow = self.grow_cycle(start, min_len.max(2), goal, found);
        self.leave();
        self.flush();
        flow == Flow::Continue
    }

    fn grow_cycle(&mut self, start: Vertex, min_len: usize, goal: Goal<'_>, found: &mut Found) -> Flow {
        if self.tick() == Flow::Stop {
            return Flow::Stop;
        }
        let t = self.seq.len();
        let last = *self.seq.last().expect("non-empty");
        let shadow = self.shadow;
        let worth_closing = match goal {
            Goal::Exact(k) => t == k,
            Goal::Longest(_) => t > found.len || found.seq.is_none(),
        };
        if t >= min_len && worth_closing && self.push_pair(shadow.common(last, start)) {
            self.pop_pair();
            found.len = t;
            found.seq = Some(self.seq.clone());
            match goal {
                Goal::Exact(_) => return Flow::Stop,
                Goal::Longest(shared) => {
                    shared.fetch_max(t, Ordering::Relaxed);
                }
            }
        }
        if cycle_pruned(goal, t, self.free_count, min_len, found) {
            return Flow::Continue;
        }
        let reach = self.reachable(last, start);
        if cycle_pruned(goal, t, reach, min_len, found) {
            return Flow::Continue;
        }
        for (u, cands) in shadow.neighbours(last) {
            let u = *u;
            if !self.usable(u, start) || !self.push_pair(cands) {
                continue;
            }
            self.enter(u);
            let flow = self.grow_cycle(start, min_len, goal, found);
            self.leave();
            self.pop_pair();
            if flow == Flow::Stop {
                return Flow::Stop;
            }
        }
        Flow::Continue
    }

    /// Every vertex sequence of exactly `t` vertices starting at `start`
    /// (the smallest vertex) whose pairs, closing pair included, admit
    /// distinct representatives.
    pub(crate) fn closed_sequences(&mut self, start: Vertex, t: usize) -> Vec<Vec<Vertex>> {
        let mut out = Vec::new();
        if t >= 2 && start <= self.n && self.allowed[start] {
            self.enter(start);
            self.collect_closed(start, t, &mut out);
            self.leave();
        }
        out
    }

    fn collect_closed(&mut self, start: Vertex, t: usize, out: &mut Vec<Vec<Vertex>>) {
        let last = *self.seq.last().expect("non-empty");
        let shadow = self.shadow;
        if self.seq.len() == t {
            if self.push_pair(shadow.common(last, start)) {
                self.pop_pair();
                out.push(self.seq.clone());
            }
            return;
        }
        for (u, cands) in shadow.neighbours(last) {
            let u = *u;
            if !self.usable(u, start) || !self.push_pair(cands) {
                continue;
            }
            self.enter(u);
            self.collect_closed(start, t, out);
            self.leave();
            self.pop_pair();
        }
    }
}

fn path_pruned(goal: Goal<'_>, len: usize, extra: usize, found: &Found) -> bool {
    match goal {
        Goal::Exact(k) => len + extra < k,
        Goal::Longest(shared) => len + extra <= found.len || len + extra < shared.load(Ordering::Relaxed),
    }
}

fn cycle_pruned(goal: Goal<'_>, t: usize, extra: usize, min_len: usize, found: &Found) -> bool {
    match goal {
        Goal::Exact(k) => t + extra < k,
        Goal::Longest(shared) => {
            let best = if found.seq.is_some() { found.len } else { min_len - 1 };
            t + extra <= best || t + extra < shared.load(Ordering::Relaxed)
        }
    }
}

/// Lexicographically smallest system of distinct representatives for the
/// consecutive pairs of a vertex sequence.
pub(crate) fn lexmin_sdr(shadow: &Shadow, edge_count: usize, pairs: &[(Vertex, Vertex)]) -> Option<Vec<EdgeId>> {
    let cands: Vec<&[EdgeId]> = pairs.iter().map(|&(a, b)| shadow.common(a, b)).collect();
    let mut taken = vec![false; edge_count];
    let mut chosen = Vec::with_capacity(pairs.len());
    for i in 0..pairs.len() {
        let pick = cands[i].iter().copied().find(|&e| {
            if taken[e] {
                return false;
            }
            taken[e] = true;
            let ok = has_sdr(&cands[i + 1..], &taken);
            taken[e] = false;
            ok
        })?;
        taken[pick] = true;
        chosen.push(pick);
    }
    Some(chosen)
}

/// Whether `cands` admit distinct representatives avoiding `taken` edges.
pub(crate) fn has_sdr(cands: &[&[EdgeId]], taken: &[bool]) -> bool {
    let mut owner = vec![FREE; taken.len()];
    let mut mark = vec![0u32; taken.len()];
    fn augment(
        p: usize,
        cands: &[&[EdgeId]],
        taken: &[bool],
        owner: &mut [usize],
        mark: &mut [u32],
        stamp: u32,
    ) -> bool {
        for &e in cands[p] {
            if taken[e] || mark[e] == stamp {
                continue;
            }
            mark[e] = stamp;
            if owner[e] == FREE || augment(owner[e], cands, taken, owner, mark, stamp) {
                owner[e] = p;
                return true;
            }
        }
        false
    }
    (0..cands.len()).all(|p| augment(p, cands, taken, &mut owner, &mut mark, p as u32 + 1))
}

/// Every system of distinct representatives, in lexicographic order.
pub(crate) fn all_sdrs(cands: &[&[EdgeId]], edge_count: usize) -> Vec<Vec<EdgeId>> {
    fn rec(i: usize, cands: &[&[EdgeId]], taken: &mut Vec<bool>, cur: &mut Vec<EdgeId>, out: &mut Vec<Vec<EdgeId>>) {
        if i == cands.len() {
            out.push(cur.clone());
            return;
        }
        for &e in cands[i] {
            if taken[e] {
                continue;
            }
            taken[e] = true;
            cur.push(e);
            rec(i + 1, cands, taken, cur, out);
            cur.pop();
            taken[e] = false;
        }
    }
    let mut out = Vec::new();
    rec(0, cands, &mut vec![false; edge_count], &mut Vec::new(), &mut out);
    out
}
