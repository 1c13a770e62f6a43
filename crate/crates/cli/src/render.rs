//! Plain-text renderings for `--format human`. Each one summarises the same
//! value that the JSON output carries.

use std::fmt::Write;

use latile::analysis::AnalysisReport;
use latile::certify::{CertifyOutcome, Verdict};
use latile::search::SearchResult;
use latile::tiling::VerificationReport;
use latile::{ErrorBall, TilingHomomorphism};

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Nonexistence => "NONEXISTENCE",
        Verdict::Inconclusive => "INCONCLUSIVE",
        Verdict::Inapplicable => "INAPPLICABLE",
    }
}

pub fn search(r: &SearchResult) -> String {
    let mut s = String::new();
    let mode = if r.reduced {
        "multiplier-reduced"
    } else {
        "full"
    };
    let _ = writeln!(s, "search n={} ({mode})", r.n);
    for (i, g) in r.groups_examined.iter().enumerate() {
        let _ = writeln!(
            s,
            "  {g}: {} of {} candidates, {} evaluated in full",
            r.candidates_tested[i], r.candidate_space[i], r.leaves_evaluated[i]
        );
    }
    if r.solutions.is_empty() {
        let _ = writeln!(s, "no tiling exists for n={}", r.n);
    } else {
        let _ = writeln!(
            s,
            "{} solution(s), {} counting orbits",
            r.solutions.len(),
            r.lifted_solution_count
        );
        for sol in &r.solutions {
            let elems: Vec<String> = sol.elements.iter().map(|e| e.to_string()).collect();
            let _ = writeln!(s, "  {}: {{{}}}", sol.group, elems.join(", "));
        }
    }
    let _ = writeln!(
        s,
        "{:.3} s on {} thread(s)",
        r.metadata.wall_time_secs, r.metadata.threads
    );
    s
}

pub fn certify(o: &CertifyOutcome) -> String {
    let mut s = String::new();
    match o {
        CertifyOutcome::Inapplicable(r) => {
            let _ = writeln!(
                s,
                "n={}: no prime p > 2n+1 divides {}, {}",
                r.n,
                r.order,
                verdict(r.conclusion)
            );
        }
        CertifyOutcome::Certificate(c) => {
            let _ = writeln!(
                s,
                "n={}: p={} divides {} (m={}), a={}, b={}, ell <= {}",
                c.n, c.p, c.order, c.m, c.a, c.b, c.ell_max
            );
            for row in &c.rows {
                let how = match &row.witness {
                    Some(w) => format!("x={}, y={}", w.x, w.y),
                    None if row.representable => "representable".to_string(),
                    None => "not representable".to_string(),
                };
                let _ = writeln!(s, "  ell={:<3} target={:<4} {how}", row.ell, row.target);
            }
            let _ = writeln!(s, "{}", verdict(c.conclusion));
        }
    }
    s
}

pub fn map(m: &TilingHomomorphism) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "map Z^{} -> {}", m.n(), m.spec());
    for (i, g) in m.images().iter().enumerate() {
        let _ = writeln!(s, "  e_{i:<2} -> {g}");
    }
    s
}

pub fn verification(r: &VerificationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "ball size {}, group order {}, bijective: {}",
        r.ball_size,
        r.group_order,
        yes(r.bijective)
    );
    if let Some(reason) = &r.reason {
        let _ = writeln!(s, "  {reason}");
    }
    if r.collision_count > 0 {
        let _ = writeln!(s, "  {} collision(s)", r.collision_count);
        for c in &r.collisions {
            let _ = writeln!(
                s,
                "  {:?} and {:?} both map to {}",
                c.first, c.second, c.element
            );
        }
    }
    if !r.uncovered.is_empty() {
        let _ = writeln!(s, "  {} element(s) not hit", r.uncovered.len());
    }
    s
}

pub fn analysis(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let t3 = &r.theorem3;
    let _ = writeln!(
        s,
        "n={}: |T|={} ({}), e in T: {}, symmetric: {}, square identity: {}",
        r.n,
        t3.size,
        yes(t3.size_ok),
        yes(t3.contains_identity),
        yes(t3.symmetric),
        yes(t3.square_identity)
    );
    let spectrum: Vec<String> = r
        .lemma2
        .partition
        .iter()
        .map(|(k, v)| format!("{k}:{v}"))
        .collect();
    let _ = writeln!(s, "T T^(2) spectrum {{{}}}", spectrum.join(", "));
    match r.lemma2.beta {
        Some(b) => {
            let _ = writeln!(s, "beta = {b}");
        }
        None => {
            let _ = writeln!(s, "beta not an integer");
        }
    }
    for c in &r.lemma2.identity_checks {
        let _ = writeln!(
            s,
            "  {:<20} {} = {}  {}",
            c.name,
            c.left,
            c.right,
            yes(c.holds)
        );
    }
    let l6 = &r.lemma6;
    let _ = writeln!(
        s,
        "e in T^(3): {} times, 2*beta+1 = {}  {}",
        l6.identity_multiplicity,
        l6.doubled_beta + 1,
        yes(l6.holds)
    );
    for c in &r.congruences.checks {
        let _ = writeln!(s, "{}  {}", c.statement, yes(c.holds));
        if c.mismatches > 0 {
            let _ = writeln!(s, "  {} position(s) differ", c.mismatches);
        }
    }
    s
}

pub fn ball(b: &ErrorBall) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "B({},{},{},{}): {} vectors",
        b.n,
        b.t,
        b.k_plus,
        b.k_minus,
        b.len()
    );
    for v in &b.vectors {
        let _ = writeln!(s, "  {v:?}");
    }
    s
}
