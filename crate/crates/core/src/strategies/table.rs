use crate::exact::ValueTable;
use crate::graph::{Graph, Vertex};

use super::{SurvivorPlay, SurvivorStrategy};

/// Values closer than this count as ties, which go to the smallest id.
const TIE: f64 = 1e-12;

/// The stationary strategy that is greedy with respect to a solved value
/// table. Against the least fixed point this is optimal.
#[derive(Debug, Clone)]
pub struct OptimalTable {
    table: ValueTable,
}

impl OptimalTable {
    pub fn new(table: ValueTable) -> OptimalTable {
        OptimalTable { table }
    }

    pub fn table(&self) -> &ValueTable {
        &self.table
    }

    /// Start minimizing the capture probability against `zombies` (sorted).
    pub fn best_start(&self, zombies: &[Vertex]) -> Vertex {
        let t = &self.table;
        let r = t.index().rank(zombies);
        let mut best: Option<(f64, Vertex)> = None;
        for v in 0..t.n {
            let p = t.after_move(r, zombies, v);
            if best.is_none_or(|(b, _)| p < b - TIE) {
                best = Some((p, v));
            }
        }
        best.map_or(0, |(_, v)| v)
    }

    /// Move minimizing the capture probability once the zombies stand on
    /// `zombies` (sorted).
    pub fn best_move(&self, g: &Graph, zombies: &[Vertex], survivor: Vertex) -> Vertex {
        let t = &self.table;
        let r = t.index().rank(zombies);
        let mut cands: Vec<Vertex> = g.neighbors(survivor).to_vec();
        cands.push(survivor);
        cands.sort_unstable();
        let mut best: Option<(f64, Vertex)> = None;
        for m in cands {
            let p = t.after_move(r, zombies, m);
            if best.is_none_or(|(b, _)| p < b - TIE) {
                best = Some((p, m));
            }
        }
        best.map_or(survivor, |(_, m)| m)
    }
}

impl SurvivorStrategy for OptimalTable {
    fn name(&self) -> &str {
        "optimal-table"
    }

    fn begin<'a>(&'a self, g: &'a Graph) -> Box<dyn SurvivorPlay + 'a> {
        Box::new(TablePlay { strat: self, g })
    }
}

struct TablePlay<'a> {
    strat: &'a OptimalTable,
    g: &'a Graph,
}

impl SurvivorPlay for TablePlay<'_> {
    fn start(&mut self, zombies: &[Vertex]) -> Vertex {
        self.strat.best_start(zombies)
    }

    fn next_move(&mut self, _round: u64, zombies: &[Vertex], survivor: Vertex) -> Vertex {
        self.strat.best_move(self.g, zombies, survivor)
    }
}
