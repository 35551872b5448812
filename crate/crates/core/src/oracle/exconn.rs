use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::compact::{self, EdgeSet, PathProbe, Universe};
use super::orderly::{self, local_index, set_from_hex, set_to_hex, Node, Walker};
use super::{check_universe, Explored, SearchReport, SCHEMA_VERSION};
use crate::constructions::{build_extremal, regime_annotations, ConstructionParams};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct ExconnOptions {
    /// Worker count for the subtree phase. Results do not depend on it.
    pub threads: usize,
    /// Node budget over the whole run.
    pub budget: Option<u64>,
    pub time_limit: Option<Duration>,
    /// Frontier file; resumed when it already exists.
    pub checkpoint: Option<PathBuf>,
    /// Edge count at which the tree is cut into independent subtrees.
    pub split_depth: usize,
    /// Start from the edge count of the conjectured extremal construction
    /// when it is connected and `BP_k`-free here.
    pub seed_with_construction: bool,
}

impl Default for ExconnOptions {
    fn default() -> Self {
        ExconnOptions {
            threads: 1,
            budget: None,
            time_limit: None,
            checkpoint: None,
            split_depth: 3,
            seed_with_construction: true,
        }
    }
}

pub(crate) struct Limits {
    budget: u64,
    deadline: Option<Instant>,
    spent: AtomicU64,
    stop: AtomicBool,
}

impl Limits {
    pub(crate) fn new(budget: Option<u64>, time_limit: Option<Duration>) -> Self {
        Limits {
            budget: budget.unwrap_or(u64::MAX),
            deadline: time_limit.map(|t| Instant::now() + t),
            spent: AtomicU64::new(0),
            stop: AtomicBool::new(false),
        }
    }

    pub(crate) fn charge(&self, nodes: u64) {
        let total = self.spent.fetch_add(nodes, Ordering::Relaxed) + nodes;
        if total > self.budget || self.deadline.is_some_and(|d| Instant::now() > d) {
            self.stop.store(true, Ordering::Relaxed);
        }
    }

    pub(crate) fn stopped(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
    }
}

/// Walks `BP_k`-free sets, keeping the connected ones of maximum size. A
/// node is expanded only while `|S| + |addable|` can still reach the best
/// size, so ties survive and every extremal class is found.
struct ExconnWalk<'a> {
    n: usize,
    k: usize,
    best: usize,
    found: Vec<EdgeSet>,
    nodes: u64,
    limits: &'a Limits,
}

impl Walker for ExconnWalk<'_> {
    fn allow(&self, u: &Universe, child: EdgeSet, edge: usize) -> bool {
        let edges = u.edges_of(child);
        !PathProbe::new(&edges, self.n, self.k).has_path_using(local_index(child, edge))
    }

    fn visit(&mut self, u: &Universe, node: &Node) -> bool {
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) {
            self.limits.charge(1024);
        }
        let m = node.size();
        // Every descendant lies between the node and the node plus all its
        // candidates; if even the latter is disconnected, nothing below is.
        let reachable = node.addable.iter().fold(node.set, |s, &g| s | 1u128 << g);
        if !compact::is_connected(&u.edges_of(reachable), u.full_vertex_mask()) {
            return false;
        }
        if m >= self.best && compact::is_connected(&u.edges_of(node.set), u.full_vertex_mask()) {
            if m > self.best {
                self.found.clear();
                self.best = m;
            }
            self.found.push(node.set);
        }
        node.bound() >= self.best
    }

    fn floor(&self) -> usize {
        self.best
    }

    fn stopped(&self) -> bool {
        self.limits.stopped()
    }
}

impl ExconnWalk<'_> {
    fn result(&self) -> TaskResult {
        self.limits.charge(self.nodes % 1024);
        TaskResult {
            best: self.best,
            found: self.found.iter().map(|&s| set_to_hex(s)).collect(),
            nodes: self.nodes,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct TaskResult {
    best: usize,
    found: Vec<String>,
    nodes: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Task {
    node: Node,
    result: Option<TaskResult>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Header {
    schema_version: u32,
    kind: String,
    n: usize,
    r: usize,
    k: usize,
    seed: usize,
    split_depth: usize,
}

/// Resumable state: the frontier left by the sequential top phase, with the
/// result of every finished subtree.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct Checkpoint {
    header: Header,
    top: TaskResult,
    tasks: Vec<Task>,
}

impl Checkpoint {
    fn load(path: &Path) -> Result<Option<Self>> {
        if !path.exists() {
            return Ok(None);
        }
        let text = std::fs::read_to_string(path).map_err(|e| io_error(path, &e))?;
        let cp: Checkpoint = serde_json::from_str(&text).map_err(|e| Error::Parse {
            line: e.line(),
            message: format!("checkpoint {}: {e}", path.display()),
        })?;
        Ok(Some(cp))
    }

    fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        let text = serde_json::to_string(self).expect("checkpoint serializes");
        std::fs::write(&tmp, text).map_err(|e| io_error(&tmp, &e))?;
        std::fs::rename(&tmp, path).map_err(|e| io_error(path, &e))
    }
}

fn io_error(path: &Path, e: &std::io::Error) -> Error {
    Error::Parse {
        line: 0,
        message: format!("{}: {e}", path.display()),
    }
}

/// Block size lists `b_1 >= b_2 >= ...`, each at least 2, summing to at most
/// `room`.
fn block_lists(room: usize, largest: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for b in (2..=largest.min(room)).rev() {
        for mut rest in block_lists(room - b, b) {
            rest.insert(0, b);
            out.push(rest);
        }
    }
    out
}

/// Lower bound from the construction family: the largest `H_{n,a,b..}`
/// (cores of any size allowed) that is connected and `BP_k`-free here,
/// greedily extended by every further edge in colex order that keeps it
/// free.
fn construction_seed(u: &Universe, n: usize, r: usize, k: usize) -> (Option<EdgeSet>, String) {
    let mut best: Option<(EdgeSet, String)> = None;
    for a in 0..=n {
        for bs in block_lists(n - a, n - a) {
            let p = ConstructionParams::new(n, a, bs, r).permissive();
            let Ok(h) = build_extremal(&p) else { continue };
            let set = u.set_of(&h);
            let edges = u.edges_of(set);
            if !compact::is_connected(&edges, u.full_vertex_mask()) || PathProbe::new(&edges, n, k).has_path() {
                continue;
            }
            if best.as_ref().is_none_or(|(b, _)| set.count_ones() > b.count_ones()) {
                best = Some((set, format!("H(n={n}, a={a}, b={:?})", p.bs)));
            }
        }
    }
    let Some((mut set, name)) = best else {
        return (
            None,
            "no construction lower bound: no member of the family is connected and BP_k-free".into(),
        );
    };
    let base = set.count_ones();
    for g in 0..u.len() {
        let child = set | 1u128 << g;
        if child != set && !PathProbe::new(&u.edges_of(child), n, k).has_path_using(local_index(child, g)) {
            set = child;
        }
    }
    let m = set.count_ones();
    (
        Some(set),
        format!("search seeded with lower bound {m}: {name} ({base} edges) greedily extended"),
    )
}

/// Exact `ex_r^conn(n, BP_k)` with every extremal hypergraph up to
/// isomorphism.
pub fn exconn_bruteforce(n: usize, r: usize, k: usize) -> Result<SearchReport> {
    exconn_bruteforce_with(n, r, k, &ExconnOptions::default())
}

pub fn exconn_bruteforce_with(n: usize, r: usize, k: usize, opts: &ExconnOptions) -> Result<SearchReport> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let u = check_universe(n, r, None)?;
    let limits = Limits::new(opts.budget, opts.time_limit);
    let (seed, seed_note) = if opts.seed_with_construction {
        construction_seed(&u, n, r, k)
    } else {
        (None, "search not seeded".to_string())
    };
    let header = Header {
        schema_version: SCHEMA_VERSION,
        kind: "exconn".into(),
        n,
        r,
        k,
        seed: seed.map_or(0, |s| s.count_ones() as usize),
        split_depth: opts.split_depth,
    };
    let stored = match &opts.checkpoint {
        Some(path) => Checkpoint::load(path)?,
        None => None,
    };
    let (top, tasks) = match stored {
        Some(cp) if cp.header == header => (cp.top, cp.tasks),
        Some(_) => {
            return Err(Error::invalid(
                "checkpoint was written for different parameters or an older schema",
            ))
        }
        None => {
            let mut w = ExconnWalk {
                n,
                k,
                best: header.seed,
                found: Vec::new(),
                nodes: 0,
                limits: &limits,
            };
            let start = orderly::root(&u, &w);
            let mut frontier = Vec::new();
            orderly::walk(&u, &start, &mut w, true, Some(opts.split_depth), &mut frontier);
            let tasks = frontier.into_iter().map(|node| Task { node, result: None }).collect();
            (w.result(), tasks)
        }
    };
    let top_exhausted = limits.stopped();
    let tasks = Mutex::new(tasks);
    let save = |tasks: &[Task]| -> Result<()> {
        match &opts.checkpoint {
            Some(path) => Checkpoint {
                header: header.clone(),
                top: top.clone(),
                tasks: tasks.to_vec(),
            }
            .save(path),
            None => Ok(()),
        }
    };
    if !top_exhausted {
        save(&tasks.lock().expect("tasks"))?;
        let pending: Vec<usize> = {
            let list = tasks.lock().expect("tasks");
            (0..list.len()).filter(|&i| list[i].result.is_none()).collect()
        };
        let run = |i: usize| -> Result<()> {
            if limits.stopped() {
                return Ok(());
            }
            let node = tasks.lock().expect("tasks")[i].node.clone();
            let mut w = ExconnWalk {
                n,
                k,
                best: top.best,
                found: Vec::new(),
                nodes: 0,
                limits: &limits,
            };
            orderly::walk(&u, &node, &mut w, true, None, &mut Vec::new());
            let result = w.result();
            if limits.stopped() {
                return Ok(());
            }
            let mut list = tasks.lock().expect("tasks");
            list[i].result = Some(result);
            save(&list)
        };
        if opts.threads > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(opts.threads)
                .build()
                .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
            pool.install(|| pending.par_iter().try_for_each(|&i| run(i)))?;
        } else {
            pending.iter().try_for_each(|&i| run(i))?;
        }
    }
    let tasks = tasks.into_inner().expect("tasks");
    let complete = !top_exhausted && tasks.iter().all(|t| t.result.is_some());

    let results: Vec<&TaskResult> = std::iter::once(&top)
        .chain(tasks.iter().filter_map(|t| t.result.as_ref()))
        .collect();
    let mut value = results.iter().filter(|t| !t.found.is_empty()).map(|t| t.best).max();
    let mut witnesses: Vec<Vec<Vec<usize>>> = results
        .iter()
        .filter(|t| Some(t.best) == value)
        .flat_map(|t| t.found.iter())
        .map(|hex| {
            let set = set_from_hex(hex).expect("stored sets are valid");
            u.to_hypergraph(set).edges().to_vec()
        })
        .collect();
    witnesses.sort();
    witnesses.dedup();

    let mut annotations = regime_annotations(n, k, r);
    annotations.push(seed_note);
    if !complete {
        annotations.push("budget exhausted: value is a lower bound only".into());
        // A complete run rediscovers the seed; a partial one may not have.
        if let Some(set) = seed.filter(|s| value.is_none_or(|v| v < s.count_ones() as usize)) {
            value = Some(set.count_ones() as usize);
            witnesses = vec![u.to_hypergraph(set).edges().to_vec()];
            annotations.push("the only witness is the seed".into());
        }
    }
    Ok(SearchReport {
        schema_version: SCHEMA_VERSION,
        n,
        r,
        k,
        value: value.map(|v| v as u64),
        witnesses,
        explored: Explored {
            nodes: results.iter().map(|t| t.nodes).sum(),
            subtrees: tasks.len(),
            subtrees_done: tasks.iter().filter(|t| t.result.is_some()).count(),
        },
        budget_exhausted: !complete,
        annotations,
    })
}
