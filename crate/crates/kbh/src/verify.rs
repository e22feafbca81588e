//! Seeded randomized invariance suites. Each trial closes a random braid
//! word into a knot, applies one move, and checks the bracket, the framed
//! invariant and the oriented invariant against the transformation each is
//! supposed to undergo. Knots only: reorienting a component changes the
//! oriented theory, and the orienter is free to pick either direction for
//! a component of a rewritten link, so links would produce false alarms.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::bracket::kauffman_bracket;
use crate::diagram::{apply_move, from_braid, orient, LinkDiagram, MoveKind, MoveSite};
use crate::framedcube::framed_homology;
use crate::oriented::oriented_homology;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteMove {
    R1Plus,
    R1Minus,
    R2,
    R3,
    Reorder,
}

impl SuiteMove {
    pub fn label(self) -> &'static str {
        match self {
            SuiteMove::R1Plus => "r1+",
            SuiteMove::R1Minus => "r1-",
            SuiteMove::R2 => "r2",
            SuiteMove::R3 => "r3",
            SuiteMove::Reorder => "reorder",
        }
    }

    /// Parse one comma-list token; `r1` means both curls.
    pub fn parse(tok: &str) -> Option<Vec<SuiteMove>> {
        match tok.trim() {
            "r1" => Some(vec![SuiteMove::R1Plus, SuiteMove::R1Minus]),
            "r1+" => Some(vec![SuiteMove::R1Plus]),
            "r1-" => Some(vec![SuiteMove::R1Minus]),
            "r2" => Some(vec![SuiteMove::R2]),
            "r3" => Some(vec![SuiteMove::R3]),
            "reorder" => Some(vec![SuiteMove::Reorder]),
            _ => None,
        }
    }

    pub fn parse_list(text: &str) -> Option<Vec<SuiteMove>> {
        let mut moves = Vec::new();
        for tok in text.split(',') {
            moves.extend(SuiteMove::parse(tok)?);
        }
        if moves.is_empty() {
            None
        } else {
            Some(moves)
        }
    }
}

pub struct SuiteConfig {
    pub moves: Vec<SuiteMove>,
    pub trials: u32,
    pub max_crossings: u32,
    pub seed: u64,
}

#[derive(Debug)]
pub struct SuiteOutcome {
    pub trials: u32,
    pub checks: u64,
    pub failures: Vec<String>,
}

/// A braid word on `strands` strands whose closure is a knot with at most
/// `max_n` crossings; `with_triangle` reserves room for an R3 site and
/// returns its first crossing index.
fn random_knot_word(
    rng: &mut ChaCha8Rng,
    strands: u32,
    max_n: u32,
    with_triangle: bool,
) -> (Vec<i64>, Option<u32>) {
    let reserve = if with_triangle { 3 } else { 0 };
    loop {
        let len = rng.gen_range((strands - 1).max(1)..=max_n - reserve);
        let mut word: Vec<i64> = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..strands as i64);
                if rng.gen() {
                    g
                } else {
                    -g
                }
            })
            .collect();
        let mut site = None;
        if with_triangle {
            let k = rng.gen_range(1..strands as i64 - 1);
            let at = rng.gen_range(0..=word.len());
            word.splice(at..at, [k, k + 1, k]);
            site = Some(at as u32);
        }
        let mut perm: Vec<usize> = (0..strands as usize).collect();
        for &l in &word {
            perm.swap(l.unsigned_abs() as usize - 1, l.unsigned_abs() as usize);
        }
        let mut seen = 1;
        let mut at = perm[0];
        while at != 0 {
            at = perm[at];
            seen += 1;
        }
        if seen == strands {
            return (word, site);
        }
    }
}

fn describe(word: &[i64], strands: u32, mv: SuiteMove, site: &str) -> String {
    let letters: Vec<String> = word.iter().map(|l| l.to_string()).collect();
    format!("BR[{strands}; {}] + {} {site}", letters.join(" "), mv.label())
}

fn check_one(
    rng: &mut ChaCha8Rng,
    mv: SuiteMove,
    max_n: u32,
    failures: &mut Vec<String>,
    checks: &mut u64,
) {
    let strands = if mv == SuiteMove::R3 {
        rng.gen_range(3..=4)
    } else {
        rng.gen_range(2..=4)
    };
    let (word, triangle) = random_knot_word(rng, strands, max_n, mv == SuiteMove::R3);
    let od = from_braid(&word, strands).expect("letters in range");
    let d0 = &od.diagram;

    let (d1, site_text) = match mv {
        SuiteMove::R1Plus | SuiteMove::R1Minus | SuiteMove::R2 => {
            let kind = match mv {
                SuiteMove::R1Plus => MoveKind::R1Plus,
                SuiteMove::R1Minus => MoveKind::R1Minus,
                _ => MoveKind::R2,
            };
            let e = rng.gen_range(1..=d0.edge_count());
            match apply_move(d0, kind, MoveSite::Edge(e)) {
                Ok(d1) => (d1, format!("at edge {e}")),
                Err(err) => {
                    failures.push(format!(
                        "{}: move failed: {err}",
                        describe(&word, strands, mv, "")
                    ));
                    return;
                }
            }
        }
        SuiteMove::R3 => {
            let c = triangle.expect("triangle reserved");
            match apply_move(d0, MoveKind::R3, MoveSite::Triangle(c, c + 1, c + 2)) {
                Ok(d1) => (d1, format!("at crossings {c},{},{}", c + 1, c + 2)),
                Err(err) => {
                    failures.push(format!(
                        "{}: move failed: {err}",
                        describe(&word, strands, mv, "")
                    ));
                    return;
                }
            }
        }
        SuiteMove::Reorder => {
            let mut xs = d0.crossings().to_vec();
            xs.shuffle(rng);
            (LinkDiagram::new(xs, d0.free_loops()).expect("a shuffle stays closed"), String::new())
        }
    };
    let what = describe(&word, strands, mv, &site_text);

    let b0 = kauffman_bracket(d0).expect("nonempty");
    let b1 = kauffman_bracket(&d1).expect("nonempty");
    let b_expected = match mv {
        SuiteMove::R1Plus => b0.mul_monomial(-1, 3),
        SuiteMove::R1Minus => b0.mul_monomial(-1, -3),
        _ => b0,
    };
    *checks += 1;
    if b1 != b_expected {
        failures.push(format!("{what}: bracket changed"));
    }

    let h0 = framed_homology(d0);
    let h1 = framed_homology(&d1);
    let h_expected = match mv {
        SuiteMove::R1Plus => h0.reflexed().shifted(3),
        SuiteMove::R1Minus => h0.reflexed().shifted(-3),
        _ => h0,
    };
    *checks += 1;
    if h1 != h_expected {
        failures.push(format!("{what}: framed homology changed"));
    }

    *checks += 1;
    match orient(&d1) {
        Ok(od1) => {
            if oriented_homology(&od1) != oriented_homology(&od) {
                failures.push(format!("{what}: oriented homology changed"));
            }
        }
        Err(err) => failures.push(format!("{what}: rewritten diagram will not orient: {err}")),
    }
}

pub fn run_suite(cfg: &SuiteConfig) -> SuiteOutcome {
    assert!(cfg.max_crossings >= 4, "too small for a move site");
    assert!(!cfg.moves.is_empty());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut failures = Vec::new();
    let mut checks = 0;
    for _ in 0..cfg.trials {
        let mv = cfg.moves[rng.gen_range(0..cfg.moves.len())];
        check_one(&mut rng, mv, cfg.max_crossings, &mut failures, &mut checks);
    }
    SuiteOutcome { trials: cfg.trials, checks, failures }
}
