// scratch: how much budget would the pinned operator set need?
use qevolab::problems::{F6Domain, F6Problem};
use qevolab::qiea::*;
use qevolab::rng::Rng;

fn suite(tag: &str, params: &QieaParams, seeds: u64) {
    let problem = F6Problem::new(F6Domain::standard());
    let mut hits = 0;
    let mut bests = Vec::new();
    for seed in 0..seeds {
        let r = run_qiea(&problem, params, &mut Rng::new(seed)).unwrap();
        if r.best_fitness >= 0.99 { hits += 1; }
        bests.push(r.best_fitness);
    }
    bests.sort_by(f64::total_cmp);
    println!("{tag}: hits={hits}/{seeds} median={:.4} min={:.4}", bests[bests.len()/2], bests[0]);
}

fn main() {
    for (n, t, lam) in [
        (2000, 500, 1.0),
        (4000, 500, 1.0),
        (10000, 500, 1.0),
        (4000, 500, 0.5),
        (10000, 300, 0.5),
    ] {
        let p = QieaParams { population: n, generations: t, lambda: lam, ..QieaParams::default() };
        suite(&format!("n={n} T={t} lambda={lam}"), &p, 20);
    }
}
