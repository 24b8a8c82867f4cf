//! The depth-first search over partial rectangles.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::Instant;

use super::state::PartialOrbit;
use super::{BolContext, EnumConfig, Enumeration, Rectangle, Truncation};

/// The search recurses once per guessed cell, so deep rectangles need a
/// roomy stack.
const SEARCH_STACK_BYTES: usize = 32 << 20;

/// Enumerates every complete rectangle reachable from the initial state.
///
/// At the first empty cell in row-major order, existing symbols are
/// tried in ascending order and a fresh symbol last; each guess is
/// propagated to a fixpoint before descending. The output is
/// duplicate-free — sibling branches pin different values into the same
/// cell — and arrives in a deterministic depth-first order that does not
/// depend on `cfg.threads`. Only a `time_budget` can make two runs
/// differ; a run cut short by any limit says so in its truncation flags.
pub fn enumerate(ctx: &BolContext, cfg: &EnumConfig) -> Enumeration {
    assert!(
        cfg.max_symbols >= ctx.m(),
        "the subloop alone already needs {} symbols",
        ctx.m()
    );
    let deadline = cfg.time_budget.map(|budget| Instant::now() + budget);
    thread::scope(|scope| {
        thread::Builder::new()
            .stack_size(SEARCH_STACK_BYTES)
            .spawn_scoped(scope, || run(ctx, cfg, deadline))
            .expect("search thread spawns")
            .join()
            .expect("search thread runs to completion")
    })
}

fn run(ctx: &BolContext, cfg: &EnumConfig, deadline: Option<Instant>) -> Enumeration {
    let mut root = PartialOrbit::initial(ctx);
    if root.propagate(ctx).is_err() {
        // cannot happen for a genuine right Bol subloop — its own table
        // extends the initial state — but stay graceful
        return Enumeration {
            rectangles: Vec::new(),
            truncation: Truncation::default(),
        };
    }
    if cfg.threads <= 1 {
        let mut search = Search {
            ctx,
            max_symbols: cfg.max_symbols,
            max_rectangles: cfg.max_rectangles,
            deadline,
            out: Vec::new(),
            truncation: Truncation::default(),
        };
        search.dfs(&mut root);
        Enumeration {
            rectangles: search.out,
            truncation: search.truncation,
        }
    } else {
        run_parallel(ctx, cfg, deadline, root)
    }
}

enum Flow {
    Continue,
    Stop,
}

struct Search<'a> {
    ctx: &'a BolContext,
    max_symbols: usize,
    max_rectangles: usize,
    deadline: Option<Instant>,
    out: Vec<Rectangle>,
    truncation: Truncation,
}

impl Search<'_> {
    fn dfs(&mut self, p: &mut PartialOrbit) -> Flow {
        if let Some(deadline) = self.deadline {
            if Instant::now() >= deadline {
                self.truncation.time_exceeded = true;
                return Flow::Stop;
            }
        }
        let Some((row, col)) = p.first_empty() else {
            self.out.push(Rectangle::new(p.to_rows()));
            if self.out.len() >= self.max_rectangles {
                self.truncation.rectangle_cap = true;
                return Flow::Stop;
            }
            return Flow::Continue;
        };
        let mut candidates = p.existing_candidates(row, col);
        if p.symbol_count() < self.max_symbols {
            candidates.push(p.symbol_count());
        } else {
            self.truncation.symbol_cap = true;
        }
        for sym in candidates {
            let mark = p.mark();
            if p.place(row, col, sym).is_ok() && p.propagate(self.ctx).is_ok() {
                if let Flow::Stop = self.dfs(p) {
                    return Flow::Stop;
                }
            }
            p.rewind(mark);
        }
        Flow::Continue
    }
}

/// A frontier entry: either a finished rectangle found while splitting,
/// or an open subtree for a worker.
enum Node {
    Done(Rectangle),
    Open(PartialOrbit),
}

/// Parallel run: the top of the tree is expanded, in depth-first order,
/// until there are enough open subtrees to feed the workers; workers
/// search subtrees independently and the results are stitched back in
/// frontier order, which reproduces the sequential depth-first output.
fn run_parallel(
    ctx: &BolContext,
    cfg: &EnumConfig,
    deadline: Option<Instant>,
    root: PartialOrbit,
) -> Enumeration {
    let mut truncation = Truncation::default();
    let mut frontier: Vec<Node> = vec![if root.first_empty().is_none() {
        Node::Done(Rectangle::new(root.to_rows()))
    } else {
        Node::Open(root)
    }];
    let target = cfg.threads * 4;
    loop {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            break; // workers will notice and flag it
        }
        let open = frontier
            .iter()
            .position(|node| matches!(node, Node::Open(_)));
        let open_count = frontier
            .iter()
            .filter(|node| matches!(node, Node::Open(_)))
            .count();
        let Some(index) = open else { break };
        if open_count >= target {
            break;
        }
        let Node::Open(parent) = frontier.remove(index) else {
            unreachable!()
        };
        let (row, col) = parent.first_empty().expect("open nodes are incomplete");
        let mut candidates = parent.existing_candidates(row, col);
        if parent.symbol_count() < cfg.max_symbols {
            candidates.push(parent.symbol_count());
        } else {
            truncation.symbol_cap = true;
        }
        let mut children = Vec::new();
        for sym in candidates {
            let mut child = parent.clone();
            if child.place(row, col, sym).is_ok() && child.propagate(ctx).is_ok() {
                children.push(if child.first_empty().is_none() {
                    Node::Done(Rectangle::new(child.to_rows()))
                } else {
                    Node::Open(child)
                });
            }
        }
        frontier.splice(index..index, children);
    }

    // workers claim frontier entries by index and report results per slot
    let results: Mutex<Vec<(usize, Vec<Rectangle>, Truncation)>> =
        Mutex::new(Vec::with_capacity(frontier.len()));
    let next = AtomicUsize::new(0);
    thread::scope(|scope| {
        for _ in 0..cfg.threads {
            thread::Builder::new()
                .stack_size(SEARCH_STACK_BYTES)
                .spawn_scoped(scope, || loop {
                    let index = next.fetch_add(1, Ordering::Relaxed);
                    let Some(node) = frontier.get(index) else { break };
                    let slot = match node {
                        Node::Done(rect) => {
                            (index, vec![rect.clone()], Truncation::default())
                        }
                        Node::Open(p) => {
                            let mut local = p.clone();
                            let mut search = Search {
                                ctx,
                                max_symbols: cfg.max_symbols,
                                max_rectangles: cfg.max_rectangles,
                                deadline,
                                out: Vec::new(),
                                truncation: Truncation::default(),
                            };
                            search.dfs(&mut local);
                            (index, search.out, search.truncation)
                        }
                    };
                    results.lock().expect("no worker panics").push(slot);
                })
                .expect("worker thread spawns");
        }
    });

    let mut slots = results.into_inner().expect("workers are done");
    slots.sort_unstable_by_key(|&(index, _, _)| index);
    let mut rectangles = Vec::new();
    for (_, rects, flags) in slots {
        truncation.symbol_cap |= flags.symbol_cap;
        truncation.time_exceeded |= flags.time_exceeded;
        rectangles.extend(rects);
    }
    if rectangles.len() >= cfg.max_rectangles {
        rectangles.truncate(cfg.max_rectangles);
        truncation.rectangle_cap = true;
    }
    Enumeration {
        rectangles,
        truncation,
    }
}
