//! Exact-rational audit of the discharging argument: initial charges,
//! vertex/face classifications, rules R1-R5, conservation, and the
//! structural lemma suite.
//!
//! All charge is Rational64; no floating point anywhere. Incidence is
//! counted with multiplicity along boundary walks, so a cut vertex on a
//! face contributes one unit per occurrence.

use std::collections::BTreeMap;

use num_rational::Rational64;
use serde::Serialize;
use thiserror::Error;

use crate::configurations::{find_bad_faces, BadFaceRecord};
use crate::cycle_analysis::{self, CycleSpec};
use crate::plane_graph::PlaneGraph;

pub type Charge = Rational64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Element {
    Vertex(usize),
    Face(usize),
}

#[derive(Debug, Clone, Serialize)]
pub struct Transfer {
    pub from: Element,
    pub to: Element,
    pub amount: Charge,
    pub rule: &'static str,
}

/// Charges per element with snapshots before rules, after R1-R4, and
/// after R5, plus the full transfer log.
#[derive(Debug, Clone)]
pub struct ChargeLedger {
    pub n: usize,
    pub nf: usize,
    pub mu: Vec<Charge>,
    pub mu_star: Vec<Charge>,
    pub mu_prime: Vec<Charge>,
    pub transfers: Vec<Transfer>,
}

impl ChargeLedger {
    pub fn index(&self, e: Element) -> usize {
        match e {
            Element::Vertex(v) => v,
            Element::Face(f) => self.n + f,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.n)
            .map(Element::Vertex)
            .chain((0..self.nf).map(Element::Face))
    }

    pub fn total(charges: &[Charge]) -> Charge {
        charges.iter().sum()
    }
}

#[derive(Debug, Error)]
pub enum DischargeError {
    #[error("initial charges sum to {0}, not -12")]
    EulerMismatch(Charge),
    #[error("discharging rules require minimum degree 3, found {0}")]
    MinDegreeTooLow(usize),
    #[error("graph is not in the forbidden-cycle class")]
    NotInClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VertexTag {
    /// 3-vertex on a 3-face.
    Bad,
    /// 3-vertex on precisely one 5-face.
    Worse,
    /// 3-vertex on precisely two 5-faces.
    Worst,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FaceTag {
    /// 5-face with five 3-vertices.
    Light5,
    Bad10,
    Good,
    None,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub vertex_tags: Vec<VertexTag>,
    pub face_tags: Vec<FaceTag>,
    pub bad_faces: Vec<BadFaceRecord>,
}

/// Tag vertices and faces per the structural definitions.
pub fn classify(g: &PlaneGraph) -> Classification {
    let nf = g.faces().len();
    let mut vertex_tags = vec![VertexTag::None; g.n()];
    for v in 0..g.n() {
        if g.degree(v) != 3 {
            continue;
        }
        let occ = g.face_occurrences(v);
        if occ.iter().any(|&f| g.face_degree(f) == 3) {
            vertex_tags[v] = VertexTag::Bad;
            continue;
        }
        match occ.iter().filter(|&&f| g.face_degree(f) == 5).count() {
            1 => vertex_tags[v] = VertexTag::Worse,
            2 => vertex_tags[v] = VertexTag::Worst,
            _ => {}
        }
    }
    let bad_faces = find_bad_faces(g);
    let mut face_tags = vec![FaceTag::None; nf];
    for f in 0..nf {
        if g.face_degree(f) == 5
            && g.face(f).is_simple_cycle()
            && g.face(f).walk_vertices().all(|v| g.degree(v) == 3)
        {
            face_tags[f] = FaceTag::Light5;
        }
    }
    for rec in &bad_faces {
        face_tags[rec.face] = FaceTag::Bad10;
    }
    for rec in &bad_faces {
        if face_tags[rec.good_face] == FaceTag::None {
            face_tags[rec.good_face] = FaceTag::Good;
        }
    }
    Classification {
        vertex_tags,
        face_tags,
        bad_faces,
    }
}

/// Initial charges 2d(v) - 6 and d(f) - 6; their sum is -12 on every
/// connected plane graph by Euler's formula.
pub fn initial_charges(g: &PlaneGraph) -> Result<ChargeLedger, DischargeError> {
    let n = g.n();
    let nf = g.faces().len();
    let mut mu = Vec::with_capacity(n + nf);
    for v in 0..n {
        mu.push(Charge::from_integer(2 * g.degree(v) as i64 - 6));
    }
    for f in 0..nf {
        mu.push(Charge::from_integer(g.face_degree(f) as i64 - 6));
    }
    let total = ChargeLedger::total(&mu);
    if total != Charge::from_integer(-12) {
        return Err(DischargeError::EulerMismatch(total));
    }
    Ok(ChargeLedger {
        n,
        nf,
        mu: mu.clone(),
        mu_star: mu.clone(),
        mu_prime: mu,
        transfers: Vec::new(),
    })
}

/// Run the rule engine (precondition-checked entry point): requires a
/// class member of minimum degree at least 3, the regime in which the
/// rules are stated.
pub fn apply_rules(g: &PlaneGraph) -> Result<ChargeLedger, DischargeError> {
    if g.min_degree() < 3 {
        return Err(DischargeError::MinDegreeTooLow(g.min_degree()));
    }
    if cycle_analysis::in_class(g, &CycleSpec::default()).is_err() {
        return Err(DischargeError::NotInClass);
    }
    run_rules(g)
}

/// The rule engine itself. Well defined on any connected plane graph;
/// conservation holds unconditionally, the non-negativity claims only in
/// the stated regime.
pub fn run_rules(g: &PlaneGraph) -> Result<ChargeLedger, DischargeError> {
    let cls = classify(g);
    let mut ledger = initial_charges(g)?;
    let n = g.n();
    let nf = g.faces().len();
    let mut current = ledger.mu.clone();
    let mut transfers: Vec<Transfer> = Vec::new();

    let mut push = |current: &mut Vec<Charge>,
                    transfers: &mut Vec<Transfer>,
                    from: Element,
                    to: Element,
                    amount: Charge,
                    rule: &'static str| {
        debug_assert!(amount > Charge::from_integer(0));
        let fi = match from {
            Element::Vertex(v) => v,
            Element::Face(f) => n + f,
        };
        let ti = match to {
            Element::Vertex(v) => v,
            Element::Face(f) => n + f,
        };
        current[fi] -= amount;
        current[ti] += amount;
        transfers.push(Transfer { from, to, amount, rule });
    };

    let one = Charge::from_integer(1);
    let half = Rational64::new(1, 2);

    // R1: each 3-face receives 1 from each incident vertex.
    for f in 0..nf {
        if g.face_degree(f) == 3 {
            for v in g.face(f).walk_vertices() {
                push(&mut current, &mut transfers, Element::Vertex(v), Element::Face(f), one, "R1");
            }
        }
    }

    // R2: 3-vertices, keyed by tag. Faces are visited per occurrence.
    for v in 0..n {
        if g.degree(v) != 3 {
            continue;
        }
        let occ = g.face_occurrences(v);
        let five_faces: Vec<usize> = occ.iter().copied().filter(|&f| g.face_degree(f) == 5).collect();
        match cls.vertex_tags[v] {
            VertexTag::Bad => {
                for &f in &occ {
                    if g.face_degree(f) >= 10 {
                        push(&mut current, &mut transfers, Element::Face(f), Element::Vertex(v), half, "R2a");
                    }
                }
            }
            VertexTag::Worse => {
                let f5 = five_faces[0];
                let light = cls.face_tags[f5] == FaceTag::Light5;
                let (send, recv, rule) = if light {
                    (Rational64::new(1, 3), Rational64::new(1, 6), "R2b")
                } else {
                    (Rational64::new(1, 8), Rational64::new(1, 16), "R2c")
                };
                push(&mut current, &mut transfers, Element::Vertex(v), Element::Face(f5), send, rule);
                for &f in &occ {
                    if g.face_degree(f) >= 8 {
                        push(&mut current, &mut transfers, Element::Face(f), Element::Vertex(v), recv, rule);
                    }
                }
            }
            VertexTag::Worst => {
                let lights = five_faces
                    .iter()
                    .filter(|&&f| cls.face_tags[f] == FaceTag::Light5)
                    .count();
                let (recv, rule) = match lights {
                    2 => (Rational64::new(1, 3), "R2d"),
                    0 => (Rational64::new(1, 4), "R2e"),
                    _ => (Rational64::new(1, 3), "R2f"),
                };
                for &f5 in &five_faces {
                    let send = if cls.face_tags[f5] == FaceTag::Light5 {
                        Rational64::new(1, 6)
                    } else {
                        Rational64::new(1, 8)
                    };
                    push(&mut current, &mut transfers, Element::Vertex(v), Element::Face(f5), send, rule);
                }
                for &f in &occ {
                    if g.face_degree(f) >= 8 {
                        push(&mut current, &mut transfers, Element::Face(f), Element::Vertex(v), recv, rule);
                    }
                }
            }
            VertexTag::None => {}
        }
    }

    // R3: 4-vertices.
    for v in 0..n {
        if g.degree(v) != 4 {
            continue;
        }
        let occ = g.face_occurrences(v);
        let threes: Vec<usize> = occ.iter().copied().filter(|&f| g.face_degree(f) == 3).collect();
        let fives: Vec<usize> = occ.iter().copied().filter(|&f| g.face_degree(f) == 5).collect();
        if threes.len() == 1 && fives.len() == 1 {
            push(&mut current, &mut transfers, Element::Vertex(v), Element::Face(fives[0]), one, "R3a");
        } else if threes.len() == 1 && fives.is_empty() {
            let t = threes[0];
            let mut seen = Vec::new();
            for &f in &occ {
                if f != t && !seen.contains(&f) && g.faces_adjacent(f, t) {
                    seen.push(f);
                    push(&mut current, &mut transfers, Element::Vertex(v), Element::Face(f), half, "R3b");
                }
            }
        } else if occ.iter().all(|&f| g.face_degree(f) >= 5) {
            for &f in &occ {
                push(&mut current, &mut transfers, Element::Vertex(v), Element::Face(f), half, "R3c");
            }
        }
    }

    // R4: 5⁺-vertices.
    for v in 0..n {
        if g.degree(v) >= 5 {
            for f in g.face_occurrences(v) {
                if g.face_degree(f) >= 5 {
                    push(&mut current, &mut transfers, Element::Vertex(v), Element::Face(f), Rational64::new(2, 3), "R4");
                }
            }
        }
    }

    ledger.mu_star = current.clone();

    // R5: each good face spreads its post-R4 charge over the adjacent
    // bad faces. A non-positive balance sends nothing.
    let bad_face_ids: Vec<usize> = {
        let mut ids: Vec<usize> = cls.bad_faces.iter().map(|r| r.face).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    };
    for gf in 0..nf {
        if cls.face_tags[gf] != FaceTag::Good {
            continue;
        }
        let adjacent_bad: Vec<usize> = bad_face_ids
            .iter()
            .copied()
            .filter(|&b| b != gf && g.faces_adjacent(gf, b))
            .collect();
        let t = adjacent_bad.len() as i64;
        let balance = current[n + gf];
        if t > 0 && balance > Charge::from_integer(0) {
            let share = balance / Charge::from_integer(t);
            for b in adjacent_bad {
                push(&mut current, &mut transfers, Element::Face(gf), Element::Face(b), share, "R5");
            }
        }
    }

    ledger.mu_prime = current;
    ledger.transfers = transfers;
    Ok(ledger)
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub total_mu: Charge,
    pub total_mu_star: Charge,
    pub total_mu_prime: Charge,
    pub conserved: bool,
    pub negatives: Vec<(Element, Charge)>,
    pub has_configuration: bool,
}

/// Full discharging audit of a class member with minimum degree 3.
pub fn audit(g: &PlaneGraph) -> Result<AuditReport, DischargeError> {
    let ledger = apply_rules(g)?;
    Ok(audit_ledger(g, &ledger))
}

pub fn audit_ledger(g: &PlaneGraph, ledger: &ChargeLedger) -> AuditReport {
    let total_mu = ChargeLedger::total(&ledger.mu);
    let total_mu_star = ChargeLedger::total(&ledger.mu_star);
    let total_mu_prime = ChargeLedger::total(&ledger.mu_prime);
    let negatives = ledger
        .elements()
        .filter(|&e| ledger.mu_prime[ledger.index(e)] < Charge::from_integer(0))
        .map(|e| (e, ledger.mu_prime[ledger.index(e)]))
        .collect();
    let has_configuration = matches!(
        crate::configurations::local_structure_unchecked(g),
        Ok(crate::configurations::LocalStructure::Config(_))
    );
    AuditReport {
        total_mu,
        total_mu_star,
        total_mu_prime,
        conserved: total_mu == total_mu_star && total_mu_star == total_mu_prime,
        negatives,
        has_configuration,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaItem {
    pub item: &'static str,
    pub pass: bool,
    pub witness: Option<String>,
}

/// Evaluate the ten structural items on a class member of minimum
/// degree 3.
pub fn check_lemma_s(g: &PlaneGraph) -> Result<Vec<LemmaItem>, DischargeError> {
    if g.min_degree() < 3 {
        return Err(DischargeError::MinDegreeTooLow(g.min_degree()));
    }
    if cycle_analysis::in_class(g, &CycleSpec::default()).is_err() {
        return Err(DischargeError::NotInClass);
    }
    let mut items = Vec::new();
    let mut item = |name: &'static str, witness: Option<String>| {
        items.push(LemmaItem {
            item: name,
            pass: witness.is_none(),
            witness,
        });
    };

    // (i), (ii): 5- and 6-cycles are chordless
    for (name, len) in [("i: 5-cycles chordless", 5), ("ii: 6-cycles chordless", 6)] {
        let w = cycle_analysis::enumerate_cycles(g, len)
            .into_iter()
            .find(|c| cycle_analysis::has_chord(g, c))
            .map(|c| format!("chorded cycle {c:?}"));
        item(name, w);
    }

    // (iii): 6-face boundary is a 6-cycle or two 3-cycles
    let w = faces_of_degree(g, 6)
        .find(|&f| {
            let d = g.decompose_boundary(f);
            let mut lens: Vec<usize> = d.cycles.iter().map(Vec::len).collect();
            lens.sort_unstable();
            !(d.cut_edges.is_empty() && (lens == vec![6] || lens == vec![3, 3]))
        })
        .map(|f| format!("face {f}"));
    item("iii: 6-face boundary shape", w);

    // (iv): no 5-face adjacent to a 6-face
    let w = face_pairs(g)
        .find(|&(f, h)| {
            let (a, b) = (g.face_degree(f), g.face_degree(h));
            ((a, b) == (5, 6) || (a, b) == (6, 5)) && g.faces_adjacent(f, h)
        })
        .map(|(f, h)| format!("faces {f}, {h}"));
    item("iv: no 5-face adjacent to 6-face", w);

    // (v): adjacent 5-faces are normally adjacent
    let w = face_pairs(g)
        .find(|&(f, h)| {
            g.face_degree(f) == 5
                && g.face_degree(h) == 5
                && g.faces_adjacent(f, h)
                && g.faces_normally_adjacent(f, h) != Ok(true)
        })
        .map(|(f, h)| format!("faces {f}, {h}"));
    item("v: adjacent 5-faces normally adjacent", w);

    // (vi): a 3-vertex is incident with at most two 5-faces
    let w = (0..g.n())
        .find(|&v| {
            g.degree(v) == 3
                && g.face_occurrences(v)
                    .iter()
                    .filter(|&&f| g.face_degree(f) == 5)
                    .count()
                    > 2
        })
        .map(|v| format!("vertex {v}"));
    item("vi: 3-vertex on at most two 5-faces", w);

    // (vii): no 7-faces
    let w = faces_of_degree(g, 7).next().map(|f| format!("face {f}"));
    item("vii: no 7-faces", w);

    // (viii): 8-face boundary shapes
    let w = faces_of_degree(g, 8)
        .find(|&f| {
            let d = g.decompose_boundary(f);
            let mut lens: Vec<usize> = d.cycles.iter().map(Vec::len).collect();
            lens.sort_unstable();
            let ok = (d.cut_edges.is_empty() && lens == vec![8])
                || (d.cut_edges.len() == 1 && lens == vec![3, 3])
                || (d.cut_edges.is_empty() && lens == vec![3, 5]);
            !ok
        })
        .map(|f| format!("face {f}"));
    item("viii: 8-face boundary shape", w);

    // (ix): 9-face boundary shapes
    let w = faces_of_degree(g, 9)
        .find(|&f| {
            let d = g.decompose_boundary(f);
            let mut lens: Vec<usize> = d.cycles.iter().map(Vec::len).collect();
            lens.sort_unstable();
            let ok = d.cut_edges.is_empty() && (lens == vec![3, 6] || lens == vec![3, 3, 3]);
            !ok
        })
        .map(|f| format!("face {f}"));
    item("ix: 9-face boundary shape", w);

    // (x): every face adjacent to a 3-face is a 10⁺-face
    let w = face_pairs(g)
        .find(|&(f, h)| {
            let (a, b) = (g.face_degree(f), g.face_degree(h));
            let three = if a == 3 { Some(b) } else if b == 3 { Some(a) } else { None };
            matches!(three, Some(other) if other < 10) && g.faces_adjacent(f, h)
        })
        .map(|(f, h)| format!("faces {f}, {h}"));
    item("x: faces adjacent to 3-faces are 10⁺", w);

    Ok(items)
}

fn faces_of_degree(g: &PlaneGraph, d: usize) -> impl Iterator<Item = usize> + '_ {
    (0..g.faces().len()).filter(move |&f| g.face_degree(f) == d)
}

fn face_pairs(g: &PlaneGraph) -> impl Iterator<Item = (usize, usize)> + '_ {
    let nf = g.faces().len();
    (0..nf).flat_map(move |f| (f + 1..nf).map(move |h| (f, h)))
}

#[derive(Debug, Clone, Serialize)]
pub struct RuleTransferCheck {
    pub bad_face: usize,
    pub good_face: usize,
    pub apexes_44: bool,
    pub required: Charge,
    pub transferred: Charge,
    pub pass: bool,
}

/// Lower bounds on the R5 transfer from each good face to its bad face:
/// at least 1/4 when both apexes are 4-vertices, at least 1/2 when one
/// is a 5⁺-vertex.
pub fn check_lemma_rule(g: &PlaneGraph) -> Result<Vec<RuleTransferCheck>, DischargeError> {
    let ledger = apply_rules(g)?;
    let cls = classify(g);
    let mut by_pair: BTreeMap<(usize, usize), Charge> = BTreeMap::new();
    for t in &ledger.transfers {
        if t.rule == "R5" {
            if let (Element::Face(from), Element::Face(to)) = (t.from, t.to) {
                *by_pair.entry((from, to)).or_insert_with(|| Charge::from_integer(0)) += t.amount;
            }
        }
    }
    let mut out = Vec::new();
    for rec in &cls.bad_faces {
        let apexes_44 = g.degree(rec.apex1) == 4 && g.degree(rec.apex3) == 4;
        let required = if apexes_44 {
            Rational64::new(1, 4)
        } else {
            Rational64::new(1, 2)
        };
        let transferred = by_pair
            .get(&(rec.good_face, rec.face))
            .copied()
            .unwrap_or_else(|| Charge::from_integer(0));
        out.push(RuleTransferCheck {
            bad_face: rec.face,
            good_face: rec.good_face,
            apexes_44,
            required,
            transferred,
            pass: transferred >= required,
        });
    }
    Ok(out)
}
