//! Luring strategy for the torus and the trajectory predicates behind it.
//!
//! The survivor circles a small box `C` clockwise. When a zombie shows up
//! inside the surrounding box `B` it walks toward it on straight legs of at
//! least `L` steps, turning by a quarter turn toward the zombie's side
//! whenever the zombie is no longer ahead. Once the zombie stands one or two
//! steps ahead, the survivor turns away from it; from then on, as long as the
//! trajectory keeps its turns proper and `L` apart, that zombie trails at
//! distance 2 or 3 forever. The survivor then walks back to the top-left
//! corner of `C` and resumes circling. When every zombie trails, or the
//! horizon has passed, it goes straight forever.
//!
//! Zombies outside `B` are ignored (apart from any within distance 3, which
//! matter only when the survivor has strayed to the edge of `B`).

use std::collections::VecDeque;

use crate::engine::{Direction, ZombieScript};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::rng;

use super::{SurvivorPlay, SurvivorStrategy};

/// Rollouts per candidate plan when seeking a zombie.
const ROLLOUTS: u64 = 24;

/// `floor(20 ln n)`: spacing of turning points and regularity window.
pub fn turn_spacing(n: usize) -> usize {
    (20.0 * (n as f64).ln()).floor() as usize
}

/// `ceil(ln n)`: how often every direction must lead a regular window.
pub fn regular_count(n: usize) -> usize {
    (n as f64).ln().ceil() as usize
}

/// Whether every window of `floor(20 ln n)` consecutive rounds in
/// `1..=horizon` has each direction first at least `ceil(ln n)` times.
pub fn check_regular(script: &ZombieScript, n: usize, horizon: u64) -> bool {
    let w = turn_spacing(n) as u64;
    let need = regular_count(n) as u64;
    if w == 0 || horizon < w {
        return true;
    }
    let first = |t: u64| script.priority(t)[0] as usize;
    let mut counts = [0u64; 4];
    for t in 1..=w {
        counts[first(t)] += 1;
    }
    if counts.iter().any(|&c| c < need) {
        return false;
    }
    for t in w + 1..=horizon {
        counts[first(t)] += 1;
        counts[first(t - w)] -= 1;
        if counts.iter().any(|&c| c < need) {
            return false;
        }
    }
    true
}

/// [`check_stable_with`] at the spacing `floor(20 ln n)`.
pub fn check_stable(traj: &[Vertex], n: usize) -> bool {
    check_stable_with(traj, n, turn_spacing(n))
}

/// Whether a torus trajectory is stable: every step moves, no turn reverses
/// direction, and turning points (the two endpoints included) are at least
/// `spacing` apart.
pub fn check_stable_with(traj: &[Vertex], n: usize, spacing: usize) -> bool {
    if traj.len() < 2 {
        return true;
    }
    let mut dirs = Vec::with_capacity(traj.len() - 1);
    for w in traj.windows(2) {
        match Direction::between(w[0], w[1], n) {
            Some(d) => dirs.push(d),
            None => return false,
        }
    }
    let mut turns = vec![0];
    for j in 1..dirs.len() {
        if dirs[j] != dirs[j - 1] {
            if dirs[j] == dirs[j - 1].opposite() {
                return false;
            }
            turns.push(j);
        }
    }
    turns.push(traj.len() - 1);
    turns.windows(2).all(|w| w[1] - w[0] >= spacing)
}

/// Box `B` and the inner box `C` it is centred on, as `(row, column)`
/// top-left corners and side lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoxSpec {
    pub n: usize,
    pub b_corner: (usize, usize),
    pub b_side: usize,
    pub c_corner: (usize, usize),
    pub c_side: usize,
}

impl BoxSpec {
    fn inside(corner: (usize, usize), side: usize, n: usize, v: Vertex) -> bool {
        let (r, c) = (v / n, v % n);
        let dr = (r + n - corner.0) % n;
        let dc = (c + n - corner.1) % n;
        dr < side && dc < side
    }

    pub fn in_b(&self, v: Vertex) -> bool {
        Self::inside(self.b_corner, self.b_side, self.n, v)
    }

    pub fn in_c(&self, v: Vertex) -> bool {
        Self::inside(self.c_corner, self.c_side + 1, self.n, v)
    }

    /// Top-left corner of `C`, where the survivor starts.
    pub fn home(&self) -> Vertex {
        self.c_corner.0 * self.n + self.c_corner.1
    }
}

/// Scale of the strategy. Every length is a multiple of the turn spacing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorusParams {
    pub n: usize,
    /// Minimum steps between turns (`L`).
    pub spacing: usize,
    /// Side of `C` in steps; at least `spacing`.
    pub circle_side: usize,
    /// Side of `B` in vertices.
    pub box_side: usize,
    /// Rounds after which the survivor stops turning (`4n`).
    pub horizon: u64,
}

impl TorusParams {
    /// Sizes tuned for a torus of a few hundred vertices a side: `L` about
    /// `20 ln n / 9` (12 at `n = 256`), `C` of side `L` and `B` covering
    /// 25/32 of each axis, so zombies are seen far enough out to be lured
    /// on legs of length `L`.
    pub fn desk(n: usize) -> TorusParams {
        let spacing = ((20.0 * (n as f64).ln() / 9.0).floor() as usize).clamp(2, (n / 8).max(2));
        let box_side = (25 * n / 32).max(spacing + 2).min(n);
        TorusParams {
            n,
            spacing,
            circle_side: spacing,
            box_side,
            horizon: 4 * n as u64,
        }
    }

    /// The asymptotic scale: `L = floor(20 ln n)` and `B` of side
    /// `floor(50000 ln n)`. Valid only for astronomically large `n`.
    pub fn asymptotic(n: usize) -> TorusParams {
        let l = turn_spacing(n).max(1);
        TorusParams {
            n,
            spacing: l,
            circle_side: l,
            box_side: (5e4 * (n as f64).ln()).floor() as usize,
            horizon: 4 * n as u64,
        }
    }

    /// Rounds that must separate two zombies' first visits to `B` for the
    /// luring of one to finish before the next shows up: `4L`.
    pub fn arrival_gap(&self) -> u64 {
        4 * self.spacing as u64
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.n < 3 {
            return bad(format!("torus side {} too small", self.n));
        }
        if self.spacing == 0 || self.circle_side < self.spacing {
            return bad(format!(
                "need 1 <= spacing <= circle side, got {} and {}",
                self.spacing, self.circle_side
            ));
        }
        if self.box_side <= self.circle_side + 1 || self.box_side > self.n {
            return bad(format!(
                "box side {} must exceed the circle side {} + 1 and fit in n = {}",
                self.box_side, self.circle_side, self.n
            ));
        }
        Ok(())
    }

    pub fn boxes(&self) -> BoxSpec {
        let n = self.n;
        let b0 = (n - self.box_side) / 2;
        let c0 = b0 + (self.box_side - self.circle_side) / 2;
        BoxSpec {
            n,
            b_corner: (b0, b0),
            b_side: self.box_side,
            c_corner: (c0, c0),
            c_side: self.circle_side,
        }
    }
}

/// The luring strategy; see the module docs.
#[derive(Debug, Clone)]
pub struct TorusBoxed {
    params: TorusParams,
    boxes: BoxSpec,
}

impl TorusBoxed {
    pub fn new(params: TorusParams) -> Result<TorusBoxed> {
        params.validate()?;
        Ok(TorusBoxed {
            params,
            boxes: params.boxes(),
        })
    }

    pub fn params(&self) -> &TorusParams {
        &self.params
    }

    pub fn boxes(&self) -> &BoxSpec {
        &self.boxes
    }
}

impl SurvivorStrategy for TorusBoxed {
    fn name(&self) -> &str {
        "torus-boxed"
    }

    fn begin<'a>(&'a self, g: &'a Graph) -> Box<dyn SurvivorPlay + 'a> {
        Box::new(TorusPlay {
            p: self.params,
            bx: self.boxes,
            on_torus: g.torus_side() == Some(self.params.n),
            heading: Direction::R,
            since_turn: 0,
            phase: Phase::Circle { leg_left: 0 },
            locked: 0,
            round: 0,
            flags: Vec::new(),
        })
    }
}

#[derive(Debug, Clone)]
enum Phase {
    /// Going round `C`; `leg_left` steps remain before the next corner.
    Circle { leg_left: usize },
    /// Walking toward the nearest free zombie.
    Seek,
    /// Just turned away from a freshly trailing zombie.
    Descend,
    /// Heading back to the top-left corner of `C`.
    Return { legs: VecDeque<(Direction, usize)> },
    /// No more turns.
    Straight,
}

struct TorusPlay {
    p: TorusParams,
    bx: BoxSpec,
    on_torus: bool,
    heading: Direction,
    /// Steps taken since the last turn (or the start).
    since_turn: usize,
    phase: Phase,
    /// Zombies currently trailing within distance 2 after their step.
    locked: usize,
    round: u64,
    flags: Vec<String>,
}

/// Shortest signed `(row, column)` offset from `s` to `z`.
fn offset(z: Vertex, s: Vertex, n: usize) -> (i64, i64) {
    let wrap = |d: i64| {
        let n = n as i64;
        let d = d.rem_euclid(n);
        if d > n / 2 {
            d - n
        } else {
            d
        }
    };
    (
        wrap((z / n) as i64 - (s / n) as i64),
        wrap((z % n) as i64 - (s % n) as i64),
    )
}

fn component(off: (i64, i64), d: Direction) -> i64 {
    let (dr, dc) = d.delta();
    off.0 * dr + off.1 * dc
}

fn l1(off: (i64, i64)) -> i64 {
    off.0.abs() + off.1.abs()
}

/// Stable leg plan from `from` (heading `h`, free to turn now) to `to`,
/// arriving by a step up. Every leg after the first is at least `min_leg`
/// long; the first continues `h` and may be empty.
fn plan_return(
    n: usize,
    from: Vertex,
    h: Direction,
    to: Vertex,
    min_leg: usize,
) -> Vec<(Direction, usize)> {
    let dr = ((to / n) as i64 - (from / n) as i64).rem_euclid(n as i64);
    let dc = ((to % n) as i64 - (from % n) as i64).rem_euclid(n as i64);
    let mut best: Option<(i64, Vec<(Direction, usize)>)> = None;

    // Heading sequences starting at h, alternating axes, ending with U.
    let mut seqs: Vec<Vec<Direction>> = vec![vec![h]];
    let mut all = Vec::new();
    for _ in 0..5 {
        let mut next = Vec::new();
        for s in &seqs {
            if *s.last().unwrap() == Direction::U {
                all.push(s.clone());
            }
            let last = *s.last().unwrap();
            for d in [last.clockwise(), last.counter_clockwise()] {
                let mut t = s.clone();
                t.push(d);
                next.push(t);
            }
        }
        seqs = next;
    }
    for s in &seqs {
        if *s.last().unwrap() == Direction::U {
            all.push(s.clone());
        }
    }

    for seq in all {
        let mins: Vec<i64> = (0..seq.len())
            .map(|i| if i == 0 { 0 } else { min_leg as i64 })
            .collect();
        let mut lens: Vec<i64> = mins.clone();
        let mut ok = true;
        for vertical in [true, false] {
            let legs: Vec<usize> = (0..seq.len())
                .filter(|&i| seq[i].is_vertical() == vertical)
                .collect();
            let want = if vertical { dr } else { dc };
            let sign = |i: usize| {
                let (a, b) = seq[i].delta();
                if vertical {
                    a
                } else {
                    b
                }
            };
            let base: i64 = legs.iter().map(|&i| sign(i) * mins[i]).sum();
            // Pick the representative of `want` mod n needing least extra.
            let mut choice: Option<(i64, usize)> = None;
            for k in -2..=2i64 {
                let r = want + k * n as i64 - base;
                if r == 0 {
                    choice = Some((0, usize::MAX));
                    break;
                }
                if let Some(&i) = legs.iter().find(|&&i| sign(i) == r.signum()) {
                    if choice.is_none_or(|(c, _)| r.abs() < c) {
                        choice = Some((r.abs(), i));
                    }
                }
            }
            match choice {
                Some((extra, i)) if i != usize::MAX => lens[i] += extra,
                Some(_) => {}
                None => ok = false,
            }
        }
        if !ok {
            continue;
        }
        let total: i64 = lens.iter().sum();
        if best.as_ref().is_none_or(|(b, _)| total < *b) {
            let plan = seq
                .iter()
                .zip(&lens)
                .enumerate()
                .filter(|(i, (_, &l))| *i > 0 || l > 0)
                .map(|(_, (&d, &l))| (d, l as usize))
                .collect();
            best = Some((total, plan));
        }
    }
    best.map(|(_, p)| p).unwrap_or_default()
}

impl TorusPlay {
    fn circle_state(&self, i: usize) -> (Vertex, Direction, usize) {
        let c = self.p.circle_side;
        let n = self.p.n;
        let order = [Direction::R, Direction::D, Direction::L, Direction::U];
        let mut v = self.bx.home();
        for j in 0..i {
            v = order[(j / c) % 4].step(v, n);
        }
        (v, order[(i / c) % 4], c - i % c)
    }

    fn turn(&mut self, d: Direction) {
        if d != self.heading {
            debug_assert_ne!(d, self.heading.opposite());
            if self.since_turn < self.p.spacing {
                self.flags.push(format!(
                    "torus-boxed: turn after {} steps (< {}) at round {}",
                    self.since_turn, self.p.spacing, self.round
                ));
            }
            self.heading = d;
            self.since_turn = 0;
        }
    }

    fn can_turn(&self) -> bool {
        self.since_turn >= self.p.spacing
    }

    /// Direction among straight and the two quarter turns that heads most
    /// toward `off`; ties prefer clockwise, then straight.
    /// Heading for the next leg while free zombies stand at `offs`.
    ///
    /// Scores two-leg plans (a first heading kept for `L` steps, then a
    /// second one kept for good) by seeded rollouts of geodesic zombies and
    /// returns the first heading of the best plan; straight ahead wins ties,
    /// then clockwise.
    fn seek_heading(&self, round: u64, s: Vertex, offs: &[(i64, i64)]) -> Direction {
        let h = self.heading;
        let mut best = (f64::MIN, h);
        for (i, d1) in [h, h.clockwise(), h.counter_clockwise()]
            .into_iter()
            .enumerate()
        {
            let lead = if d1 == h { self.since_turn } else { 0 };
            let mut value = f64::MIN;
            for (j, d2) in [d1, d1.clockwise(), d1.counter_clockwise()]
                .into_iter()
                .enumerate()
            {
                let seed = rng::hash_words(&[round, s as u64, (3 * i + j) as u64]);
                let total: f64 = (0..ROLLOUTS)
                    .map(|r| self.rollout(offs, d1, lead, d2, rng::hash_words(&[seed, r])))
                    .sum();
                value = value.max(total / ROLLOUTS as f64);
            }
            if value > best.0 + 1e-9 {
                best = (value, d1);
            }
        }
        best.1
    }

    /// One simulated continuation. Zero on a capture or on a turn forced
    /// less than `L` steps into a leg; otherwise the share of zombies that
    /// end up trailing, with a small credit for those still far away.
    fn rollout(
        &self,
        offs: &[(i64, i64)],
        d1: Direction,
        lead: usize,
        d2: Direction,
        mut state: u64,
    ) -> f64 {
        let l = self.p.spacing;
        let mut zs = offs.to_vec();
        let mut done = vec![false; zs.len()];
        let (mut dir, mut leg, mut switch) = (d1, lead, d2 != d1);
        let far = offs.iter().map(|&o| l1(o)).max().unwrap_or(0) as usize;
        let steps = (far + 3 * l).min(4 * self.p.n);
        for t in 0..steps {
            if switch && t == l {
                dir = d2;
                leg = 0;
                switch = false;
            }
            let (dr, dc) = dir.delta();
            leg += 1;
            for (z, _) in zs.iter_mut().zip(&done).filter(|(_, &d)| !d) {
                z.0 -= dr;
                z.1 -= dc;
                if *z == (0, 0) {
                    return 0.0;
                }
                state = rng::mix64(state);
                if z.1 == 0 || (z.0 != 0 && state & 1 == 0) {
                    z.0 -= z.0.signum();
                } else {
                    z.1 -= z.1.signum();
                }
                if *z == (0, 0) {
                    return 0.0;
                }
            }
            let near: Vec<usize> = (0..zs.len())
                .filter(|&i| !done[i] && l1(zs[i]) <= 2)
                .collect();
            if near.iter().any(|&i| component(zs[i], dir) > 0) {
                if leg < l {
                    return 0.0;
                }
                let worst =
                    |d: Direction| near.iter().map(|&i| component(zs[i], d)).max().unwrap_or(0);
                dir = [dir.clockwise(), dir.counter_clockwise()]
                    .into_iter()
                    .min_by_key(|&d| (worst(d), d != dir.clockwise()))
                    .unwrap();
                leg = 0;
                switch = false;
            }
            for i in near {
                done[i] = true;
            }
            if done.iter().all(|&d| d) {
                return 1.0;
            }
        }
        let credit: f64 = zs
            .iter()
            .zip(&done)
            .map(|(&z, &d)| match (d, l1(z) >= 2 * l as i64 + 6) {
                (true, _) => 1.0,
                (false, true) => 0.4,
                (false, false) => 0.1,
            })
            .sum();
        credit / zs.len() as f64
    }

    fn start_return(&mut self, s: Vertex) {
        let legs = plan_return(self.p.n, s, self.heading, self.bx.home(), self.p.spacing);
        self.phase = Phase::Return { legs: legs.into() };
    }

    fn decide(&mut self, round: u64, zombies: &[Vertex], s: Vertex) -> Direction {
        let n = self.p.n;
        let offs: Vec<(i64, i64)> = zombies
            .iter()
            .filter(|&&z| self.bx.in_b(z) || l1(offset(z, s, n)) <= 3)
            .map(|&z| offset(z, s, n))
            .collect();
        let near: Vec<(i64, i64)> = offs.iter().copied().filter(|&o| l1(o) <= 2).collect();
        let free: Vec<(i64, i64)> = offs.iter().copied().filter(|&o| l1(o) > 2).collect();

        // A zombie one or two steps ahead must never be walked into.
        let ahead = near.iter().any(|&o| component(o, self.heading) > 0);
        if ahead {
            if matches!(self.phase, Phase::Straight) {
                self.flags.push(format!(
                    "torus-boxed: zombie ahead after the last turn at round {round}"
                ));
            }
            let h = self.heading;
            let worst = |d: Direction| near.iter().map(|&o| component(o, d)).max().unwrap_or(0);
            let d = [h.clockwise(), h.counter_clockwise()]
                .into_iter()
                .min_by_key(|&d| (worst(d), d != h.clockwise()))
                .unwrap();
            self.turn(d);
        }
        if near.len() < self.locked {
            self.flags.push(format!(
                "torus-boxed: trailing zombie lost at round {round}"
            ));
        }
        let newly = near.len() != self.locked;
        self.locked = near.len();

        if matches!(self.phase, Phase::Straight) {
            return self.heading;
        }
        if round > self.p.horizon || self.locked == zombies.len() {
            self.phase = Phase::Straight;
            return self.heading;
        }
        if ahead || (newly && free.is_empty() && matches!(self.phase, Phase::Seek)) {
            self.phase = Phase::Descend;
            return self.heading;
        }

        if !free.is_empty() && !matches!(self.phase, Phase::Seek) && self.can_turn() {
            if free.len() > 1 {
                self.flags.push(format!(
                    "torus-boxed: {} free zombies in B at round {round}",
                    free.len()
                ));
            }
            let d = self.seek_heading(round, s, &free);
            self.turn(d);
            self.phase = Phase::Seek;
            return self.heading;
        }

        match &mut self.phase {
            Phase::Circle { leg_left } => {
                if *leg_left == 0 {
                    let d = self.heading.clockwise();
                    self.phase = Phase::Circle {
                        leg_left: self.p.circle_side,
                    };
                    self.turn(d);
                }
            }
            Phase::Seek => {
                if free.is_empty() {
                    self.phase = Phase::Descend;
                    return self.decide(round, zombies, s);
                }
                if self.can_turn() {
                    let d = self.seek_heading(round, s, &free);
                    self.turn(d);
                }
            }
            Phase::Descend => {
                if self.can_turn() {
                    self.start_return(s);
                    return self.decide(round, zombies, s);
                }
            }
            Phase::Return { legs } => {
                while legs.front().is_some_and(|l| l.1 == 0) {
                    legs.pop_front();
                }
                match legs.front().copied() {
                    Some((d, _)) => self.turn(d),
                    None => {
                        if s == self.bx.home() && self.heading == Direction::U {
                            self.phase = Phase::Circle { leg_left: 0 };
                        } else {
                            self.flags
                                .push(format!("torus-boxed: replanning return at round {round}"));
                            self.start_return(s);
                        }
                        return self.decide(round, zombies, s);
                    }
                }
            }
            Phase::Straight => {}
        }
        self.heading
    }
}

impl SurvivorPlay for TorusPlay {
    fn start(&mut self, zombies: &[Vertex]) -> Vertex {
        if !self.on_torus {
            self.flags
                .push("torus-boxed: not on the configured torus".into());
            self.phase = Phase::Straight;
            return 0;
        }
        let lap = 4 * self.p.circle_side;
        for i in 0..lap {
            let (v, h, left) = self.circle_state(i);
            if zombies.binary_search(&v).is_err() {
                if i > 0 {
                    self.flags.push("torus-boxed: home corner occupied".into());
                }
                self.heading = h;
                self.phase = Phase::Circle { leg_left: left };
                // Starting mid-edge, the first turn comes early.
                self.since_turn = self.p.circle_side - left;
                return v;
            }
        }
        self.flags.push("torus-boxed: all of C occupied".into());
        self.bx.home()
    }

    fn next_move(&mut self, round: u64, zombies: &[Vertex], survivor: Vertex) -> Vertex {
        if !self.on_torus {
            return survivor;
        }
        self.round = round;
        let d = self.decide(round, zombies, survivor);
        self.since_turn += 1;
        match &mut self.phase {
            Phase::Circle { leg_left } => *leg_left = leg_left.saturating_sub(1),
            Phase::Return { legs } => {
                if let Some(l) = legs.front_mut() {
                    l.1 = l.1.saturating_sub(1);
                }
            }
            _ => {}
        }
        d.step(survivor, self.p.n)
    }

    fn take_flags(&mut self) -> Vec<String> {
        std::mem::take(&mut self.flags)
    }
}
