//! Table-based dynamic programming over normalized decompositions.
//!
//! Every row of a table summarizes a family of partial admissible sets of the
//! already processed part of the framework by a [`Coloring`] of the current
//! bag. In preferred mode a row also carries *certificates*: colorings of
//! strictly larger partial admissible sets. A root row without certificates
//! stands for sets that have no admissible proper superset, i.e. preferred
//! extensions.
//!
//! A row whose certificate set contains its own coloring is dominated for
//! good: the larger set behaves identically on every future extension. Such
//! rows are dropped as soon as they appear, so no stored row ever lists its
//! own coloring as a certificate.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::{
    ArgumentationFramework, Color, Coloring, Error, Extension, NodeKind, NormalizedDecomposition, PrimalGraph, Result,
    MAX_BAG,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Semantics {
    Admissible,
    Preferred,
}

impl Semantics {
    pub fn as_str(self) -> &'static str {
        match self {
            Semantics::Admissible => "admissible",
            Semantics::Preferred => "preferred",
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Semantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "admissible" => Ok(Semantics::Admissible),
            "preferred" => Ok(Semantics::Preferred),
            other => Err(Error::InvalidArgument(alloc::format!("unknown semantics `{other}`"))),
        }
    }
}

/// What the tables track.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mode {
    pub semantics: Semantics,
    /// Argument (index) whose membership is tracked per row.
    pub target: Option<usize>,
    /// Record links to child rows so extensions can be materialized.
    pub traceback: bool,
}

impl Mode {
    pub fn new(semantics: Semantics) -> Self {
        Self { semantics, target: None, traceback: false }
    }

    pub fn with_target(mut self, target: usize) -> Self {
        self.target = Some(target);
        self
    }

    pub fn with_traceback(mut self) -> Self {
        self.traceback = true;
        self
    }
}

/// Provenance of a row: the child row(s) it was derived from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Link {
    Child(usize),
    Pair(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub coloring: Coloring,
    /// Number of partial solutions summarized by this row.
    pub count: BigUint,
    /// Present iff a target is configured.
    pub contains_target: Option<bool>,
    /// Present iff in preferred mode; sorted and deduplicated.
    pub certificates: Option<Vec<Coloring>>,
    /// Empty unless traceback is enabled.
    pub links: Vec<Link>,
}

impl Row {
    fn is_certificate_free(&self) -> bool {
        self.certificates.as_ref().is_none_or(Vec::is_empty)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    mode: Mode,
    bag: Vec<usize>,
    rows: Vec<Row>,
}

impl Table {
    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Sorted bag the colorings range over.
    pub fn bag(&self) -> &[usize] {
        &self.bag
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Color of argument `arg` in `coloring`, if `arg` is in the bag.
    pub fn color_of(&self, coloring: Coloring, arg: usize) -> Option<Color> {
        self.bag.binary_search(&arg).ok().map(|p| coloring.get(p))
    }

    /// Sum of all row counts.
    pub fn total(&self) -> BigUint {
        self.rows.iter().map(|r| &r.count).sum()
    }
}

type Key = (Coloring, Option<bool>, Option<Vec<Coloring>>);

struct Entry {
    count: BigUint,
    links: Vec<Link>,
}

/// Collects rows, merging equal keys by summing counts.
struct Rows {
    mode: Mode,
    map: BTreeMap<Key, Entry>,
}

impl Rows {
    fn new(mode: Mode) -> Self {
        Self { mode, map: BTreeMap::new() }
    }

    fn add(
        &mut self,
        coloring: Coloring,
        flag: Option<bool>,
        certs: Option<Vec<Coloring>>,
        count: BigUint,
        link: Link,
    ) {
        if let Some(c) = &certs {
            if c.binary_search(&coloring).is_ok() {
                return;
            }
        }
        let traceback = self.mode.traceback;
        let entry = self
            .map
            .entry((coloring, flag, certs))
            .or_insert_with(|| Entry { count: BigUint::zero(), links: Vec::new() });
        entry.count += count;
        if traceback {
            entry.links.push(link);
        }
    }

    fn finish(self, bag: Vec<usize>) -> Table {
        let rows = self
            .map
            .into_iter()
            .map(|((coloring, contains_target, certificates), e)| Row {
                coloring,
                count: e.count,
                contains_target,
                certificates,
                links: e.links,
            })
            .collect();
        Table { mode: self.mode, bag, rows }
    }
}

fn canonical(mut v: Vec<Coloring>) -> Vec<Coloring> {
    v.sort_unstable();
    v.dedup();
    v
}

/// Stop callback polled at node boundaries and periodically inside steps.
pub type Interrupt<'a> = &'a dyn Fn() -> bool;

const NEVER: &dyn Fn() -> bool = &|| false;
const POLL_EVERY: usize = 256;

fn poll(stop: Interrupt<'_>, i: usize) -> Result<()> {
    if i.is_multiple_of(POLL_EVERY) && stop() {
        Err(Error::Interrupted)
    } else {
        Ok(())
    }
}

/// The table of a leaf: one empty row.
pub fn leaf_table(mode: Mode) -> Table {
    let row = Row {
        coloring: Coloring::EMPTY,
        count: BigUint::one(),
        contains_target: mode.target.map(|_| false),
        certificates: (mode.semantics == Semantics::Preferred).then(Vec::new),
        links: Vec::new(),
    };
    Table { mode, bag: Vec::new(), rows: alloc::vec![row] }
}

/// Adds argument `v` to the bag of `t`.
pub fn introduce_step(t: &Table, v: usize, af: &ArgumentationFramework) -> Result<Table> {
    introduce(t, v, af, NEVER)
}

/// Extends colorings by a newly introduced argument.
struct Extend {
    pos: usize,
    /// Bag members attacked by the new argument (low bit of each slot).
    hits: u64,
    /// Bag members attacking the new argument.
    threats: u64,
    self_attack: bool,
}

impl Extend {
    fn excluded(&self, c: Coloring) -> Coloring {
        let base = c.insert(self.pos, Color::Out);
        let members = base.in_mask();
        let color = if members & self.threats != 0 {
            Color::Def
        } else if members & self.hits != 0 {
            Color::Att
        } else {
            Color::Out
        };
        base.set(self.pos, color)
    }

    fn included(&self, c: Coloring) -> Option<Coloring> {
        let base = c.insert(self.pos, Color::Out);
        if self.self_attack || base.in_mask() & (self.hits | self.threats) != 0 {
            return None;
        }
        Some(base.or_bits(self.hits | (self.hits << 1) | self.threats).set(self.pos, Color::In))
    }
}

fn introduce(t: &Table, v: usize, af: &ArgumentationFramework, stop: Interrupt<'_>) -> Result<Table> {
    let pos = match t.bag.binary_search(&v) {
        Ok(_) => return Err(Error::Internal(alloc::format!("argument {} introduced twice", af.name(v)))),
        Err(p) => p,
    };
    if t.bag.len() + 1 > MAX_BAG {
        return Err(Error::BagTooLarge(t.bag.len() + 1));
    }
    let mut bag = t.bag.clone();
    bag.insert(pos, v);

    let mut hits = 0u64;
    let mut threats = 0u64;
    for (i, &u) in bag.iter().enumerate() {
        if u == v {
            continue;
        }
        if af.attacks_pair(v, u) {
            hits |= 1 << (2 * i);
        }
        if af.attacks_pair(u, v) {
            threats |= 1 << (2 * i);
        }
    }
    let ext = Extend { pos, hits, threats, self_attack: af.attacks_pair(v, v) };
    let is_target = t.mode.target == Some(v);

    let mut out = Rows::new(t.mode);
    for (i, row) in t.rows.iter().enumerate() {
        poll(stop, i)?;
        let included = ext.included(row.coloring);

        let certs_out = row.certificates.as_ref().map(|gamma| {
            let mut next = Vec::with_capacity(2 * gamma.len() + 1);
            for &d in gamma {
                next.push(ext.excluded(d));
                next.extend(ext.included(d));
            }
            next.extend(included);
            canonical(next)
        });
        out.add(ext.excluded(row.coloring), row.contains_target, certs_out, row.count.clone(), Link::Child(i));

        if let Some(c) = included {
            let certs_in = row
                .certificates
                .as_ref()
                .map(|gamma| canonical(gamma.iter().filter_map(|&d| ext.included(d)).collect()));
            let flag = row.contains_target.map(|f| f || is_target);
            out.add(c, flag, certs_in, row.count.clone(), Link::Child(i));
        }
    }
    Ok(out.finish(bag))
}

/// Removes argument `v` from the bag of `t`.
pub fn forget_step(t: &Table, v: usize) -> Result<Table> {
    forget(t, v, NEVER)
}

fn forget(t: &Table, v: usize, stop: Interrupt<'_>) -> Result<Table> {
    let pos = t
        .bag
        .binary_search(&v)
        .map_err(|_| Error::Internal(alloc::format!("forgotten argument {v} is not in the bag")))?;
    let mut bag = t.bag.clone();
    bag.remove(pos);

    let mut out = Rows::new(t.mode);
    for (i, row) in t.rows.iter().enumerate() {
        poll(stop, i)?;
        // An unanswered attacker can no longer be countered once it leaves.
        if row.coloring.get(pos) == Color::Att {
            continue;
        }
        let certs = row
            .certificates
            .as_ref()
            .map(|gamma| canonical(gamma.iter().filter(|d| d.get(pos) != Color::Att).map(|d| d.remove(pos)).collect()));
        out.add(row.coloring.remove(pos), row.contains_target, certs, row.count.clone(), Link::Child(i));
    }
    Ok(out.finish(bag))
}

/// Combines the tables of two subtrees over the same bag.
pub fn join_step(left: &Table, right: &Table) -> Result<Table> {
    join(left, right, NEVER)
}

fn join(left: &Table, right: &Table, stop: Interrupt<'_>) -> Result<Table> {
    if left.bag != right.bag {
        return Err(Error::Internal("join over different bags".to_string()));
    }
    if left.mode != right.mode {
        return Err(Error::Internal("join over tables of different modes".to_string()));
    }
    let mut by_members: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (j, row) in right.rows.iter().enumerate() {
        by_members.entry(row.coloring.in_mask()).or_default().push(j);
    }

    let mut out = Rows::new(left.mode);
    let mut work = 0usize;
    for (i, l) in left.rows.iter().enumerate() {
        let Some(partners) = by_members.get(&l.coloring.in_mask()) else { continue };
        for &j in partners {
            poll(stop, work)?;
            work += 1;
            let r = &right.rows[j];
            let flag = match (l.contains_target, r.contains_target) {
                (Some(a), Some(b)) => Some(a || b),
                _ => None,
            };
            let certs = match (&l.certificates, &r.certificates) {
                (Some(gl), Some(gr)) => Some(join_certificates(l.coloring, gl, r.coloring, gr)),
                _ => None,
            };
            out.add(l.coloring.join(r.coloring), flag, certs, &l.count * &r.count, Link::Pair(i, j));
        }
    }
    Ok(out.finish(left.bag.clone()))
}

/// All compatible combinations of `{own} ∪ certificates` on each side, except
/// the pair of the rows' own colorings.
fn join_certificates(cl: Coloring, gl: &[Coloring], cr: Coloring, gr: &[Coloring]) -> Vec<Coloring> {
    let left: Vec<(Coloring, bool)> = core::iter::once((cl, true)).chain(gl.iter().map(|&d| (d, false))).collect();
    let mut right: BTreeMap<u64, Vec<(Coloring, bool)>> = BTreeMap::new();
    for (d, own) in core::iter::once((cr, true)).chain(gr.iter().map(|&d| (d, false))) {
        right.entry(d.in_mask()).or_default().push((d, own));
    }
    let mut out = Vec::new();
    for &(dl, own_l) in &left {
        if let Some(rs) = right.get(&dl.in_mask()) {
            for &(dr, own_r) in rs {
                if !(own_l && own_r) {
                    out.push(dl.join(dr));
                }
            }
        }
    }
    canonical(out)
}

/// Runs the dynamic program over one decomposition.
///
/// Construction checks that the decomposition is valid for the framework's
/// primal graph; queries can then be issued repeatedly.
pub struct Solver<'a> {
    af: &'a ArgumentationFramework,
    nd: &'a NormalizedDecomposition,
    stop: Interrupt<'a>,
}

impl<'a> Solver<'a> {
    pub fn new(af: &'a ArgumentationFramework, nd: &'a NormalizedDecomposition) -> Result<Self> {
        let g = PrimalGraph::from_af(af);
        if let Some(v) = crate::validate_normalized(nd, &g).into_iter().next() {
            return Err(Error::InvalidDecomposition(alloc::format!("{v}")));
        }
        Ok(Self { af, nd, stop: NEVER })
    }

    /// Installs a callback that aborts the computation with
    /// [`Error::Interrupted`] once it returns true.
    pub fn with_interrupt(mut self, stop: Interrupt<'a>) -> Self {
        self.stop = stop;
        self
    }

    fn tables(&self, mode: Mode) -> Result<Vec<Option<Table>>> {
        let mut tables: Vec<Option<Table>> = alloc::vec![None; self.nd.len()];
        let keep = mode.traceback;
        let stop = self.stop;
        for id in self.nd.post_order() {
            if stop() {
                return Err(Error::Interrupted);
            }
            let node = self.nd.node(id);
            let child = |k: usize| -> Result<&Table> {
                tables[node.children[k]].as_ref().ok_or_else(|| Error::Internal("child table missing".to_string()))
            };
            let table = match node.kind {
                NodeKind::Leaf => leaf_table(mode),
                NodeKind::Introduce(v) => introduce(child(0)?, v, self.af, stop)?,
                NodeKind::Forget(v) => forget(child(0)?, v, stop)?,
                NodeKind::Join => join(child(0)?, child(1)?, stop)?,
            };
            if table.bag != node.bag {
                return Err(Error::Internal(alloc::format!("bag mismatch at node {id}")));
            }
            if !keep {
                for &c in &node.children {
                    tables[c] = None;
                }
            }
            tables[id] = Some(table);
        }
        Ok(tables)
    }

    /// Computes the root table.
    pub fn traverse(&self, mode: Mode) -> Result<Table> {
        let mut tables = self.tables(mode)?;
        tables[self.nd.root()].take().ok_or_else(|| Error::Internal("root table missing".to_string()))
    }

    /// Number of admissible sets or preferred extensions, from root counts
    /// alone.
    pub fn count(&self, semantics: Semantics) -> Result<BigUint> {
        let root = self.traverse(Mode::new(semantics))?;
        Ok(root.rows.iter().filter(|r| r.is_certificate_free()).map(|r| &r.count).sum())
    }

    /// Whether some admissible set contains `argument`. This coincides with
    /// credulous acceptance under preferred semantics.
    pub fn credulous(&self, argument: &str) -> Result<bool> {
        let x = self.af.require(argument)?;
        let root = self.traverse(Mode::new(Semantics::Admissible).with_target(x))?;
        Ok(root.rows.iter().any(|r| r.contains_target == Some(true)))
    }

    /// Whether every extension of `semantics` contains `argument`.
    pub fn skeptical(&self, argument: &str, semantics: Semantics) -> Result<bool> {
        let x = self.af.require(argument)?;
        let root = self.traverse(Mode::new(semantics).with_target(x))?;
        Ok(!root.rows.iter().any(|r| r.is_certificate_free() && r.contains_target == Some(false)))
    }

    /// Materializes every extension by following traceback links from the
    /// qualifying root rows. Output is sorted.
    pub fn enumerate(&self, semantics: Semantics) -> Result<Vec<Extension>> {
        let tables = self.tables(Mode::new(semantics).with_traceback())?;
        let table = |id: usize| tables[id].as_ref().expect("traceback keeps every table");
        let root = self.nd.root();

        // Depth-first over choice points: each state is a partial member list
        // plus the (node, row) pairs still to expand.
        type State = (Vec<usize>, Vec<(usize, usize)>);
        let mut stack: Vec<State> = table(root)
            .rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r.is_certificate_free())
            .map(|(i, _)| (Vec::new(), alloc::vec![(root, i)]))
            .collect();
        let mut found = alloc::collections::BTreeSet::new();
        let mut steps = 0usize;
        while let Some((mut members, mut pending)) = stack.pop() {
            poll(self.stop, steps)?;
            steps += 1;
            let Some((id, r)) = pending.pop() else {
                members.sort_unstable();
                members.dedup();
                found.insert(members);
                continue;
            };
            let node = self.nd.node(id);
            let row = &table(id).rows[r];
            if let NodeKind::Introduce(v) = node.kind {
                if table(id).color_of(row.coloring, v) == Some(Color::In) {
                    members.push(v);
                }
            }
            if node.kind == NodeKind::Leaf {
                stack.push((members, pending));
                continue;
            }
            for link in &row.links {
                let mut next = pending.clone();
                match *link {
                    Link::Child(c) => next.push((node.children[0], c)),
                    Link::Pair(a, b) => {
                        next.push((node.children[0], a));
                        next.push((node.children[1], b));
                    }
                }
                stack.push((members.clone(), next));
            }
        }
        let mut out: Vec<Extension> = found.into_iter().map(|m| self.af.extension_from_indices(m)).collect();
        out.sort();
        Ok(out)
    }
}

/// Root table for `mode`.
pub fn traverse(af: &ArgumentationFramework, nd: &NormalizedDecomposition, mode: Mode) -> Result<Table> {
    Solver::new(af, nd)?.traverse(mode)
}

pub fn count_extensions(
    af: &ArgumentationFramework,
    nd: &NormalizedDecomposition,
    semantics: Semantics,
) -> Result<BigUint> {
    Solver::new(af, nd)?.count(semantics)
}

pub fn enumerate_extensions(
    af: &ArgumentationFramework,
    nd: &NormalizedDecomposition,
    semantics: Semantics,
) -> Result<Vec<Extension>> {
    Solver::new(af, nd)?.enumerate(semantics)
}

pub fn decide_credulous(af: &ArgumentationFramework, nd: &NormalizedDecomposition, argument: &str) -> Result<bool> {
    Solver::new(af, nd)?.credulous(argument)
}

/// Skeptical acceptance under preferred semantics.
pub fn decide_skeptical(af: &ArgumentationFramework, nd: &NormalizedDecomposition, argument: &str) -> Result<bool> {
    Solver::new(af, nd)?.skeptical(argument, Semantics::Preferred)
}

/// No two `in` positions of `c` attack each other.
pub fn interface_conflict_free(table: &Table, c: Coloring, af: &ArgumentationFramework) -> bool {
    let members: Vec<usize> =
        (0..table.bag.len()).filter(|p| c.in_mask() >> (2 * p) & 1 == 1).map(|p| table.bag[p]).collect();
    members.iter().all(|&a| members.iter().all(|&b| !af.attacks_pair(a, b)))
}
