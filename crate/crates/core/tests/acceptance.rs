//! One PASS/FAIL line per acceptance criterion. Time limits are part of the
//! criteria where they are stated; exceeding one fails the line.

use std::time::{Duration, Instant};

use cluster_dyn::cartan::TypeTag;
use cluster_dyn::suite::{self, SuiteReport};

const SEED: u64 = 7;

struct Line {
    name: &'static str,
    reports: Vec<SuiteReport>,
    elapsed: Duration,
    limit: Option<Duration>,
    extra_failures: Vec<String>,
}

impl Line {
    fn run(name: &'static str, limit: Option<u64>, f: impl FnOnce() -> Vec<SuiteReport>) -> Line {
        let start = Instant::now();
        let reports = f();
        Line { name, reports, elapsed: start.elapsed(), limit: limit.map(Duration::from_secs), extra_failures: vec![] }
    }

    fn passed(&self) -> bool {
        self.reports.iter().all(SuiteReport::passed)
            && self.extra_failures.is_empty()
            && self.limit.is_none_or(|l| self.elapsed < l)
    }

    fn print(&self) {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let cases: usize = self.reports.iter().map(|r| r.cases.len()).sum();
        let limit = self.limit.map(|l| format!(" (limit {}s)", l.as_secs())).unwrap_or_default();
        println!("{verdict} {} [{cases} cases, {:.2?}{limit}]", self.name, self.elapsed);
        for r in &self.reports {
            for c in r.failures().take(10) {
                println!("    {} {}: {}", r.check, c.name, c.detail.as_deref().unwrap_or("failed"));
            }
        }
        for f in &self.extra_failures {
            println!("    {f}");
        }
    }
}

fn tags(names: &[&str]) -> Vec<TypeTag> {
    names.iter().map(|s| s.parse().expect("known type")).collect()
}

fn main() {
    let finite8 = suite::finite_tags(8);
    let mut lines = Vec::new();

    lines.push(Line::run("1 sigma-period: finite rank <= 8, untwisted affine rank <= 5", Some(1), || {
        let mut all = finite8.clone();
        all.extend(TypeTag::all_untwisted_up_to(5));
        vec![suite::sigma_period(&all)]
    }));
    lines.push(Line::run("2 amalgamation: finite rank <= 8", Some(1), || vec![suite::amalgamation(&finite8)]));
    lines.push(Line::run("3 block form: finite rank <= 8", None, || vec![suite::bmatrix_blocks(&finite8)]));

    let symbolic = tags(&["A1", "A2", "A3", "A4", "B2", "B3", "C3", "G2"]);
    let mut q = Line::run("4 Q-system vs cluster: symbolic depth 4, numeric depth 12 x 20", None, || {
        vec![suite::q_vs_cluster_numeric(&finite8, 12, 20, SEED)]
    });
    for tag in &symbolic {
        let start = Instant::now();
        let r = suite::q_vs_cluster_symbolic(std::slice::from_ref(tag), 4);
        let t = start.elapsed();
        if tag.folded().rank <= 4 && t >= Duration::from_secs(60) {
            q.extra_failures.push(format!("{tag} symbolic took {t:.2?}"));
        }
        q.elapsed += t;
        q.reports.push(r);
    }
    lines.push(q);

    lines.push(Line::run("5 conservation: factorization 50 x 50 for n = 2,3,4; Q-system orbits of type A", Some(30), || {
        vec![
            suite::factorization_conservation(&[2, 3, 4], 50, 50, SEED),
            suite::q_orbit_conservation(&[1, 2, 3], 20, 50, SEED),
        ]
    }));
    lines.push(Line::run("6 twist theorem: n = 2,3 x 100, n = 4,5 x 25; SL2 golden vectors", Some(120), || {
        vec![
            suite::twist_theorem(&[2, 3], 100, SEED),
            suite::twist_theorem(&[4, 5], 25, SEED),
            suite::ensemble(&[2, 3, 4], 25, SEED),
            suite::sl2_golden(),
        ]
    }));
    lines.push(Line::run("7 Coxeter identity: finite rank <= 8", None, || vec![suite::coxeter_identity(&finite8)]));
    lines.push(Line::run("8 Laurent phenomenon: 200 sequences of length <= 8, rank <= 3", None, || {
        vec![suite::laurent(&suite::finite_tags(3), 200, 8, suite::LAURENT_WORK_BUDGET, SEED)]
    }));
    lines.push(Line::run("9 involution oracle: n <= 5", None, || vec![suite::involutions(5)]));

    for l in &lines {
        l.print();
    }
    let failed = lines.iter().filter(|l| !l.passed()).count();
    println!("{} of {} criteria passed", lines.len() - failed, lines.len());
}
