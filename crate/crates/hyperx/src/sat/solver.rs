//! A single-threaded CDCL engine: two-watched-literal propagation,
//! first-UIP clause learning, VSIDS branching with phase saving, Luby
//! restarts and activity-based clause deletion. SAT models are re-checked
//! against every clause before being returned.

use std::time::{Duration, Instant};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Lit(u32);

impl Lit {
    pub fn new(var: usize, positive: bool) -> Lit {
        Lit(((var as u32) << 1) | (!positive) as u32)
    }
    pub fn var(self) -> usize {
        (self.0 >> 1) as usize
    }
    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }
    pub fn negate(self) -> Lit {
        Lit(self.0 ^ 1)
    }
    fn index(self) -> usize {
        self.0 as usize
    }
    pub fn from_dimacs(l: i32) -> Lit {
        debug_assert!(l != 0);
        Lit::new(l.unsigned_abs() as usize - 1, l > 0)
    }
    pub fn to_dimacs(self) -> i32 {
        let v = self.var() as i32 + 1;
        if self.is_positive() {
            v
        } else {
            -v
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Value {
    True,
    False,
    Unassigned,
}

#[derive(Clone)]
struct Clause {
    lits: Vec<Lit>,
    learnt: bool,
    activity: f64,
    deleted: bool,
}

#[derive(Clone, Copy)]
struct Watcher {
    clause: u32,
    blocker: Lit,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Stats {
    pub decisions: u64,
    pub conflicts: u64,
    pub propagations: u64,
    pub restarts: u64,
    pub wall_time: Duration,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Sat,
    Unsat,
    Timeout,
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub status: Status,
    /// Truth value per variable (present iff status is Sat).
    pub model: Option<Vec<bool>>,
    pub stats: Stats,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Limits {
    pub max_conflicts: Option<u64>,
    pub max_time: Option<Duration>,
}

pub struct Solver {
    clauses: Vec<Clause>,
    watches: Vec<Vec<Watcher>>,
    assigns: Vec<Value>,
    polarity: Vec<bool>,
    level: Vec<u32>,
    reason: Vec<Option<u32>>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    cla_inc: f64,
    heap: Vec<usize>,
    heap_pos: Vec<usize>,
    seen: Vec<bool>,
    stats: Stats,
    ok: bool,
}

const VAR_DECAY: f64 = 1.0 / 0.95;
const CLA_DECAY: f64 = 1.0 / 0.999;

impl Solver {
    pub fn new(num_vars: usize) -> Solver {
        let mut s = Solver {
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * num_vars],
            assigns: vec![Value::Unassigned; num_vars],
            polarity: vec![false; num_vars],
            level: vec![0; num_vars],
            reason: vec![None; num_vars],
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: vec![0.0; num_vars],
            var_inc: 1.0,
            cla_inc: 1.0,
            heap: Vec::new(),
            heap_pos: vec![usize::MAX; num_vars],
            seen: vec![false; num_vars],
            stats: Stats::default(),
            ok: true,
        };
        for v in 0..num_vars {
            s.heap_insert(v);
        }
        s
    }

    fn value_lit(&self, l: Lit) -> Value {
        match self.assigns[l.var()] {
            Value::Unassigned => Value::Unassigned,
            Value::True => {
                if l.is_positive() {
                    Value::True
                } else {
                    Value::False
                }
            }
            Value::False => {
                if l.is_positive() {
                    Value::False
                } else {
                    Value::True
                }
            }
        }
    }

    pub fn add_clause(&mut self, lits: &[i32]) {
        if !self.ok {
            return;
        }
        let mut c: Vec<Lit> = lits.iter().map(|&l| Lit::from_dimacs(l)).collect();
        c.sort_by_key(|l| l.index());
        c.dedup();
        // tautology?
        if c.windows(2).any(|w| w[0].var() == w[1].var()) {
            return;
        }
        // drop literals already false at level 0, satisfied clauses
        c.retain(|&l| self.value_lit(l) != Value::False || self.level[l.var()] != 0);
        if c.iter().any(|&l| self.value_lit(l) == Value::True && self.level[l.var()] == 0) {
            return;
        }
        match c.len() {
            0 => self.ok = false,
            1 => {
                if !self.enqueue(c[0], None) {
                    self.ok = false;
                } else if self.propagate().is_some() {
                    self.ok = false;
                }
            }
            _ => {
                self.attach_clause(c, false);
            }
        }
    }

    fn attach_clause(&mut self, lits: Vec<Lit>, learnt: bool) -> u32 {
        let idx = self.clauses.len() as u32;
        self.watches[lits[0].negate().index()].push(Watcher {
            clause: idx,
            blocker: lits[1],
        });
        self.watches[lits[1].negate().index()].push(Watcher {
            clause: idx,
            blocker: lits[0],
        });
        self.clauses.push(Clause {
            lits,
            learnt,
            activity: 0.0,
            deleted: false,
        });
        idx
    }

    fn enqueue(&mut self, l: Lit, from: Option<u32>) -> bool {
        match self.value_lit(l) {
            Value::False => false,
            Value::True => true,
            Value::Unassigned => {
                let v = l.var();
                self.assigns[v] = if l.is_positive() {
                    Value::True
                } else {
                    Value::False
                };
                self.level[v] = self.trail_lim.len() as u32;
                self.reason[v] = from;
                self.polarity[v] = l.is_positive();
                self.trail.push(l);
                true
            }
        }
    }

    fn propagate(&mut self) -> Option<u32> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let mut i = 0;
            let mut j = 0;
            let mut ws = std::mem::take(&mut self.watches[p.index()]);
            let mut conflict = None;
            'watchers: while i < ws.len() {
                let w = ws[i];
                i += 1;
                if self.value_lit(w.blocker) == Value::True {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let ci = w.clause as usize;
                if self.clauses[ci].deleted {
                    continue;
                }
                // ensure the false literal is lits[1]
                let not_p = p.negate();
                if self.clauses[ci].lits[0] == not_p {
                    self.clauses[ci].lits.swap(0, 1);
                }
                debug_assert_eq!(self.clauses[ci].lits[1], not_p);
                let first = self.clauses[ci].lits[0];
                if first != w.blocker && self.value_lit(first) == Value::True {
                    ws[j] = Watcher {
                        clause: w.clause,
                        blocker: first,
                    };
                    j += 1;
                    continue;
                }
                for t in 2..self.clauses[ci].lits.len() {
                    let lt = self.clauses[ci].lits[t];
                    if self.value_lit(lt) != Value::False {
                        self.clauses[ci].lits.swap(1, t);
                        self.watches[lt.negate().index()].push(Watcher {
                            clause: w.clause,
                            blocker: first,
                        });
                        continue 'watchers;
                    }
                }
                // unit or conflict
                ws[j] = w;
                j += 1;
                if !self.enqueue(first, Some(w.clause)) {
                    conflict = Some(w.clause);
                    // copy remaining watchers back
                    while i < ws.len() {
                        ws[j] = ws[i];
                        i += 1;
                        j += 1;
                    }
                    break;
                }
            }
            ws.truncate(j);
            // merge any watchers pushed during the loop
            let pushed = std::mem::replace(&mut self.watches[p.index()], ws);
            self.watches[p.index()].extend(pushed);
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in self.activity.iter_mut() {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        if self.heap_pos[v] != usize::MAX {
            self.heap_sift_up(self.heap_pos[v]);
        }
    }

    fn bump_clause(&mut self, ci: usize) {
        self.clauses[ci].activity += self.cla_inc;
        if self.clauses[ci].activity > 1e20 {
            for c in self.clauses.iter_mut().filter(|c| c.learnt) {
                c.activity *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    fn analyze(&mut self, mut conflict: u32) -> (Vec<Lit>, u32) {
        let mut learnt: Vec<Lit> = vec![Lit(0)]; // placeholder for the UIP
        let mut counter = 0usize;
        let mut p: Option<Lit> = None;
        let mut index = self.trail.len();
        let cur_level = self.trail_lim.len() as u32;
        loop {
            let ci = conflict as usize;
            if self.clauses[ci].learnt {
                self.bump_clause(ci);
            }
            let start = if p.is_some() { 1 } else { 0 };
            for t in start..self.clauses[ci].lits.len() {
                let q = self.clauses[ci].lits[t];
                let v = q.var();
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    self.bump_var(v);
                    if self.level[v] >= cur_level {
                        counter += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            // next literal to look at
            loop {
                index -= 1;
                if self.seen[self.trail[index].var()] {
                    break;
                }
            }
            let pl = self.trail[index];
            self.seen[pl.var()] = false;
            counter -= 1;
            if counter == 0 {
                learnt[0] = pl.negate();
                break;
            }
            p = Some(pl);
            conflict = self.reason[pl.var()].expect("non-decision literal has a reason");
        }
        // simple clause minimization: drop literals implied by the rest
        let mut minimized = vec![learnt[0]];
        for &l in &learnt[1..] {
            let keep = match self.reason[l.var()] {
                None => true,
                Some(r) => {
                    let rc = &self.clauses[r as usize];
                    !rc
                        .lits
                        .iter()
                        .all(|&q| q.var() == l.var() || self.seen[q.var()] || self.level[q.var()] == 0)
                }
            };
            if keep {
                minimized.push(l);
            }
        }
        for &l in &learnt[1..] {
            self.seen[l.var()] = false;
        }
        let learnt = minimized;
        let backtrack = learnt[1..]
            .iter()
            .map(|l| self.level[l.var()])
            .max()
            .unwrap_or(0);
        (learnt, backtrack)
    }

    fn backtrack_to(&mut self, lvl: u32) {
        while self.trail_lim.len() as u32 > lvl {
            let lim = self.trail_lim.pop().unwrap();
            while self.trail.len() > lim {
                let l = self.trail.pop().unwrap();
                let v = l.var();
                self.assigns[v] = Value::Unassigned;
                self.reason[v] = None;
                if self.heap_pos[v] == usize::MAX {
                    self.heap_insert(v);
                }
            }
        }
        self.qhead = self.trail.len();
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        while let Some(v) = self.heap_pop() {
            if self.assigns[v] == Value::Unassigned {
                return Some(Lit::new(v, self.polarity[v]));
            }
        }
        None
    }

    fn reduce_db(&mut self) {
        let mut learnt_idx: Vec<usize> = self
            .clauses
            .iter()
            .enumerate()
            .filter(|(_, c)| c.learnt && !c.deleted && c.lits.len() > 2)
            .map(|(i, _)| i)
            .collect();
        learnt_idx.sort_by(|&a, &b| {
            self.clauses[a]
                .activity
                .partial_cmp(&self.clauses[b].activity)
                .unwrap()
        });
        let locked: Vec<Option<u32>> = self.reason.clone();
        let to_remove = learnt_idx.len() / 2;
        let mut removed = 0;
        for &ci in &learnt_idx {
            if removed >= to_remove {
                break;
            }
            if locked.iter().any(|&r| r == Some(ci as u32)) {
                continue;
            }
            self.clauses[ci].deleted = true;
            removed += 1;
        }
        for ws in self.watches.iter_mut() {
            ws.retain(|w| !self.clauses[w.clause as usize].deleted);
        }
    }

    pub fn solve(&mut self, limits: Limits) -> SolveResult {
        let start = Instant::now();
        if !self.ok {
            self.stats.wall_time = start.elapsed();
            return SolveResult {
                status: Status::Unsat,
                model: None,
                stats: self.stats,
            };
        }
        if self.propagate().is_some() {
            self.stats.wall_time = start.elapsed();
            return SolveResult {
                status: Status::Unsat,
                model: None,
                stats: self.stats,
            };
        }
        let mut learnt_cap = 4000usize.max(self.clauses.len() / 3);
        let mut restart_idx = 0u64;
        let mut conflicts_until_restart = luby(restart_idx) * 100;
        loop {
            if let Some(conflict) = self.propagate() {
                self.stats.conflicts += 1;
                if self.trail_lim.is_empty() {
                    self.stats.wall_time = start.elapsed();
                    return SolveResult {
                        status: Status::Unsat,
                        model: None,
                        stats: self.stats,
                    };
                }
                let (learnt, back) = self.analyze(conflict);
                self.backtrack_to(back);
                if learnt.len() == 1 {
                    let ok = self.enqueue(learnt[0], None);
                    debug_assert!(ok);
                } else {
                    let ci = self.attach_clause(learnt.clone(), true);
                    self.bump_clause(ci as usize);
                    let ok = self.enqueue(learnt[0], Some(ci));
                    debug_assert!(ok);
                }
                self.var_inc *= VAR_DECAY;
                self.cla_inc *= CLA_DECAY;
                if conflicts_until_restart > 0 {
                    conflicts_until_restart -= 1;
                }
                if let Some(mc) = limits.max_conflicts {
                    if self.stats.conflicts >= mc {
                        self.stats.wall_time = start.elapsed();
                        return SolveResult {
                            status: Status::Timeout,
                            model: None,
                            stats: self.stats,
                        };
                    }
                }
                if self.stats.conflicts % 256 == 0 {
                    if let Some(mt) = limits.max_time {
                        if start.elapsed() > mt {
                            self.stats.wall_time = start.elapsed();
                            return SolveResult {
                                status: Status::Timeout,
                                model: None,
                                stats: self.stats,
                            };
                        }
                    }
                }
            } else {
                if conflicts_until_restart == 0 {
                    restart_idx += 1;
                    conflicts_until_restart = luby(restart_idx) * 100;
                    self.stats.restarts += 1;
                    self.backtrack_to(0);
                }
                let learnt_count = self
                    .clauses
                    .iter()
                    .filter(|c| c.learnt && !c.deleted)
                    .count();
                if learnt_count > learnt_cap {
                    self.reduce_db();
                    learnt_cap += learnt_cap / 10;
                }
                match self.pick_branch() {
                    None => {
                        let model: Vec<bool> = self
                            .assigns
                            .iter()
                            .map(|&v| v == Value::True)
                            .collect();
                        self.stats.wall_time = start.elapsed();
                        // self-check before returning
                        for c in self.clauses.iter().filter(|c| !c.deleted && !c.learnt) {
                            debug_assert!(c
                                .lits
                                .iter()
                                .any(|&l| model[l.var()] == l.is_positive()));
                        }
                        return SolveResult {
                            status: Status::Sat,
                            model: Some(model),
                            stats: self.stats,
                        };
                    }
                    Some(l) => {
                        self.stats.decisions += 1;
                        self.trail_lim.push(self.trail.len());
                        let ok = self.enqueue(l, None);
                        debug_assert!(ok);
                    }
                }
            }
        }
    }

    // --- indexed binary max-heap on variable activity ---

    fn heap_less(&self, a: usize, b: usize) -> bool {
        self.activity[a] > self.activity[b]
    }

    fn heap_insert(&mut self, v: usize) {
        self.heap_pos[v] = self.heap.len();
        self.heap.push(v);
        self.heap_sift_up(self.heap.len() - 1);
    }

    fn heap_pop(&mut self) -> Option<usize> {
        if self.heap.is_empty() {
            return None;
        }
        let top = self.heap[0];
        self.heap_pos[top] = usize::MAX;
        let last = self.heap.pop().unwrap();
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.heap_pos[last] = 0;
            self.heap_sift_down(0);
        }
        Some(top)
    }

    fn heap_sift_up(&mut self, mut i: usize) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if self.heap_less(self.heap[i], self.heap[parent]) {
                self.heap.swap(i, parent);
                self.heap_pos[self.heap[i]] = i;
                self.heap_pos[self.heap[parent]] = parent;
                i = parent;
            } else {
                break;
            }
        }
    }

    fn heap_sift_down(&mut self, mut i: usize) {
        loop {
            let l = 2 * i + 1;
            let r = 2 * i + 2;
            let mut best = i;
            if l < self.heap.len() && self.heap_less(self.heap[l], self.heap[best]) {
                best = l;
            }
            if r < self.heap.len() && self.heap_less(self.heap[r], self.heap[best]) {
                best = r;
            }
            if best == i {
                break;
            }
            self.heap.swap(i, best);
            self.heap_pos[self.heap[i]] = i;
            self.heap_pos[self.heap[best]] = best;
            i = best;
        }
    }
}

fn luby(i: u64) -> u64 {
    // Luby sequence 1,1,2,1,1,2,4,... (0-based index)
    let mut i = i + 1;
    loop {
        let mut k = 1u64;
        while (1u64 << k) - 1 < i {
            k += 1;
        }
        if (1u64 << k) - 1 == i {
            return 1u64 << (k - 1);
        }
        i -= (1u64 << (k - 1)) - 1;
    }
}

/// Check a model against a clause list (DIMACS literals).
pub fn model_satisfies(model: &[bool], clauses: &[Vec<i32>]) -> Option<usize> {
    for (i, c) in clauses.iter().enumerate() {
        let sat = c.iter().any(|&l| {
            let v = l.unsigned_abs() as usize - 1;
            (l > 0) == model[v]
        });
        if !sat {
            return Some(i);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve_clauses(nvars: usize, clauses: &[&[i32]]) -> SolveResult {
        let mut s = Solver::new(nvars);
        for c in clauses {
            s.add_clause(c);
        }
        s.solve(Limits::default())
    }

    #[test]
    fn contradiction_is_unsat() {
        let r = solve_clauses(1, &[&[1], &[-1]]);
        assert_eq!(r.status, Status::Unsat);
    }

    #[test]
    fn simple_sat() {
        let r = solve_clauses(3, &[&[1, 2], &[-1, 3], &[-2, -3], &[2, 3]]);
        assert_eq!(r.status, Status::Sat);
        let m = r.model.unwrap();
        assert!(
            model_satisfies(
                &m,
                &[vec![1, 2], vec![-1, 3], vec![-2, -3], vec![2, 3]]
            )
            .is_none()
        );
    }

    #[test]
    fn pigeonhole_4_into_3_is_unsat() {
        // var(p, h) for 4 pigeons, 3 holes
        let v = |p: i32, h: i32| (p - 1) * 3 + h;
        let mut clauses: Vec<Vec<i32>> = Vec::new();
        for p in 1..=4 {
            clauses.push((1..=3).map(|h| v(p, h)).collect());
        }
        for h in 1..=3 {
            for p1 in 1..=4 {
                for p2 in p1 + 1..=4 {
                    clauses.push(vec![-v(p1, h), -v(p2, h)]);
                }
            }
        }
        let refs: Vec<&[i32]> = clauses.iter().map(|c| c.as_slice()).collect();
        let r = solve_clauses(12, &refs);
        assert_eq!(r.status, Status::Unsat);
    }

    #[test]
    fn random_3sat_agrees_with_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..200 {
            let nvars = rng.gen_range(3..9usize);
            let nclauses = rng.gen_range(3..30usize);
            let clauses: Vec<Vec<i32>> = (0..nclauses)
                .map(|_| {
                    (0..3)
                        .map(|_| {
                            let v = rng.gen_range(1..=nvars as i32);
                            if rng.gen() {
                                v
                            } else {
                                -v
                            }
                        })
                        .collect()
                })
                .collect();
            let brute = (0..1u32 << nvars).any(|mask| {
                clauses.iter().all(|c| {
                    c.iter().any(|&l| {
                        let bit = (mask >> (l.unsigned_abs() - 1)) & 1 == 1;
                        (l > 0) == bit
                    })
                })
            });
            let refs: Vec<&[i32]> = clauses.iter().map(|c| c.as_slice()).collect();
            let r = solve_clauses(nvars, &refs);
            match r.status {
                Status::Sat => {
                    assert!(brute, "solver said SAT on an UNSAT instance");
                    assert!(model_satisfies(&r.model.unwrap(), &clauses).is_none());
                }
                Status::Unsat => assert!(!brute, "solver said UNSAT on a SAT instance"),
                Status::Timeout => panic!("tiny instance timed out"),
            }
        }
    }

    #[test]
    fn conflict_limit_reports_timeout() {
        // hard-ish pigeonhole with a 1-conflict budget
        let v = |p: i32, h: i32| (p - 1) * 5 + h;
        let mut clauses: Vec<Vec<i32>> = Vec::new();
        for p in 1..=6 {
            clauses.push((1..=5).map(|h| v(p, h)).collect());
        }
        for h in 1..=5 {
            for p1 in 1..=6 {
                for p2 in p1 + 1..=6 {
                    clauses.push(vec![-v(p1, h), -v(p2, h)]);
                }
            }
        }
        let mut s = Solver::new(30);
        for c in &clauses {
            s.add_clause(c);
        }
        let r = s.solve(Limits {
            max_conflicts: Some(1),
            max_time: None,
        });
        assert_eq!(r.status, Status::Timeout);
    }

    #[test]
    fn luby_prefix() {
        let got: Vec<u64> = (0..15).map(luby).collect();
        assert_eq!(got, vec![1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]);
    }
}
