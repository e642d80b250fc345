//! Backtracking over a finite, indexed label domain.
//!
//! The domain is a list of magma elements together with a table of the
//! operation restricted to it: `op[a][b]` is the index of `a ⊕ b`, or `None`
//! when the result falls outside the domain (and so can never be a label).

use crate::graphs::Graph;

pub(crate) struct DomainTable {
    pub size: usize,
    pub op: Vec<Option<u32>>,
    pub commutative: bool,
    /// Labels allowed on the first vertex under the domain's symmetry group.
    pub first: Option<Vec<bool>>,
}

impl DomainTable {
    #[inline]
    fn sum(&self, a: usize, b: usize) -> Option<usize> {
        self.op[a * self.size + b].map(|x| x as usize)
    }
}

pub(crate) struct Config {
    pub relaxed: bool,
    pub strong: bool,
    pub prune: bool,
    pub budget: Option<u64>,
}

pub(crate) enum EngineResult {
    Found(Vec<usize>),
    Exhausted,
    Aborted,
}

struct State<'a> {
    table: &'a DomainTable,
    cfg: &'a Config,
    adj: Vec<Vec<bool>>,
    order: Vec<usize>,
    /// Previous vertex of the same twin class in `order`, if any.
    twin_prev: Vec<Option<usize>>,
    label: Vec<Option<usize>>,
    count: Vec<u32>,
    forbidden: Vec<u32>,
    /// Assigned edges, in assignment order.
    edges: Vec<(usize, usize)>,
    nodes: u64,
    aborted: bool,
    scratch: Vec<u32>,
    stamp: u32,
}

/// Vertex order: a vertex of maximum degree first, then repeatedly the vertex
/// with most already-ordered neighbours, ties by degree, then index.
pub(crate) fn vertex_order(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut placed = vec![false; n];
    let mut back = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (back[v], g.degree(v), std::cmp::Reverse(v)))
            .expect("an unplaced vertex remains");
        placed[v] = true;
        order.push(v);
        for w in g.neighbors(v) {
            back[w] += 1;
        }
    }
    order
}

/// Classes of interchangeable vertices: equal open or equal closed
/// neighbourhoods. Returns a class id per vertex.
pub(crate) fn twin_classes(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let open: Vec<Vec<u64>> = (0..n).map(|v| g.row(v).to_vec()).collect();
    let closed: Vec<Vec<u64>> = (0..n)
        .map(|v| {
            let mut r = g.row(v).to_vec();
            r[v / 64] |= 1 << (v % 64);
            r
        })
        .collect();
    let mut class: Vec<usize> = (0..n).collect();
    for v in 0..n {
        if let Some(u) = (0..v).find(|&u| open[u] == open[v] || closed[u] == closed[v]) {
            class[v] = class[u];
        }
    }
    class
}

pub(crate) fn run(g: &Graph, table: &DomainTable, cfg: &Config) -> (EngineResult, u64) {
    let n = g.order();
    let order = vertex_order(g);
    let mut twin_prev = vec![None; n];
    if cfg.prune {
        let class = twin_classes(g);
        // The first vertex carries the group symmetry, so it stays out of
        // the twin ordering.
        for (pos, &v) in order.iter().enumerate().skip(1) {
            twin_prev[v] = order[1..pos].iter().rev().copied().find(|&u| class[u] == class[v]);
        }
    }
    let mut st = State {
        table,
        cfg,
        adj: (0..n).map(|u| (0..n).map(|w| g.has_edge(u, w)).collect()).collect(),
        order,
        twin_prev,
        label: vec![None; n],
        count: vec![0; table.size],
        forbidden: vec![0; table.size],
        edges: Vec::new(),
        nodes: 0,
        aborted: false,
        scratch: vec![0; table.size],
        stamp: 0,
    };
    let found = st.descend(0);
    let res = if found {
        EngineResult::Found(st.label.iter().map(|l| l.expect("complete")).collect())
    } else if st.aborted {
        EngineResult::Aborted
    } else {
        EngineResult::Exhausted
    };
    (res, st.nodes)
}

impl State<'_> {
    fn descend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return !self.cfg.prune && self.leaf_ok() || self.cfg.prune;
        }
        let v = self.order[depth];
        let start = match self.twin_prev[v].and_then(|u| self.label[u]) {
            Some(l) if self.cfg.relaxed => l,
            Some(l) => l + 1,
            None => 0,
        };
        for c in start..self.table.size {
            if depth == 0 && self.cfg.prune {
                if let Some(first) = &self.table.first {
                    if !first[c] {
                        continue;
                    }
                }
            }
            if !self.cfg.relaxed && self.count[c] > 0 {
                continue;
            }
            if self.cfg.prune && !self.admissible(v, c) {
                continue;
            }
            if let Some(b) = self.cfg.budget {
                if self.nodes >= b {
                    self.aborted = true;
                    return false;
                }
            }
            self.nodes += 1;
            self.assign(v, c);
            let ok = !self.cfg.prune || self.edges_feasible(self.order.len() - depth - 1);
            if ok && self.descend(depth + 1) {
                return true;
            }
            self.unassign(v, c);
            if self.aborted {
                return false;
            }
        }
        false
    }

    /// Whether `v ↦ c` keeps every forbidden sum out of the support.
    fn admissible(&self, v: usize, c: usize) -> bool {
        if self.forbidden[c] > 0 {
            return false;
        }
        let hit = |s: Option<usize>| s.is_some_and(|s| s == c || self.count[s] > 0);
        if self.cfg.strong && hit(self.table.sum(c, c)) {
            return false;
        }
        for u in 0..self.label.len() {
            let Some(lu) = self.label[u] else { continue };
            if u == v || self.adj[v][u] {
                continue;
            }
            if hit(self.table.sum(c, lu)) || (!self.table.commutative && hit(self.table.sum(lu, c))) {
                return false;
            }
        }
        true
    }

    fn forbid(&mut self, a: usize, b: usize, delta: i32) {
        let mut bump = |s: Option<usize>| {
            if let Some(s) = s {
                self.forbidden[s] = (self.forbidden[s] as i32 + delta) as u32;
            }
        };
        bump(self.table.sum(a, b));
        if !self.table.commutative {
            bump(self.table.sum(b, a));
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.label[v] = Some(c);
        self.count[c] += 1;
        if !self.cfg.prune {
            return;
        }
        if self.cfg.strong {
            self.forbid(c, c, 1);
        }
        for u in 0..self.label.len() {
            let Some(lu) = self.label[u] else { continue };
            if u == v {
                continue;
            }
            if self.adj[v][u] {
                self.edges.push((u, v));
            } else {
                self.forbid(c, lu, 1);
            }
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        if self.cfg.prune {
            for u in 0..self.label.len() {
                let Some(lu) = self.label[u] else { continue };
                if u == v {
                    continue;
                }
                if self.adj[v][u] {
                    self.edges.pop();
                } else {
                    self.forbid(c, lu, -1);
                }
            }
            if self.cfg.strong {
                self.forbid(c, c, -1);
            }
        }
        self.count[c] -= 1;
        self.label[v] = None;
    }

    /// Every assigned edge still has a usable witness, and the distinct
    /// missing witnesses fit on the `free` unassigned vertices.
    fn edges_feasible(&mut self, free: usize) -> bool {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.scratch.iter_mut().for_each(|x| *x = 0);
            self.stamp = 1;
        }
        let mut missing = 0usize;
        for &(u, w) in &self.edges {
            let (a, b) = (self.label[u].expect("assigned"), self.label[w].expect("assigned"));
            let s = self.table.sum(a, b);
            let t = if self.table.commutative { None } else { self.table.sum(b, a) };
            let present = |x: Option<usize>| x.is_some_and(|x| self.count[x] > 0);
            if present(s) || present(t) {
                continue;
            }
            let usable = |x: Option<usize>| x.is_some_and(|x| self.forbidden[x] == 0);
            match (usable(s), usable(t)) {
                (false, false) => return false,
                _ if free == 0 => return false,
                (true, false) if self.table.commutative => {
                    let s = s.expect("usable");
                    if self.scratch[s] != self.stamp {
                        self.scratch[s] = self.stamp;
                        missing += 1;
                        if missing > free {
                            return false;
                        }
                    }
                }
                _ => {}
            }
        }
        true
    }

    /// Full check used when pruning is off.
    fn leaf_ok(&self) -> bool {
        let n = self.label.len();
        let l = |v: usize| self.label[v].expect("complete");
        let present = |x: Option<usize>| x.is_some_and(|x| self.count[x] > 0);
        if self.cfg.strong && (0..n).any(|v| present(self.table.sum(l(v), l(v)))) {
            return false;
        }
        (0..n).all(|u| {
            (u + 1..n).all(|w| {
                let e = present(self.table.sum(l(u), l(w))) || present(self.table.sum(l(w), l(u)));
                e == self.adj[u][w]
            })
        })
    }
}
