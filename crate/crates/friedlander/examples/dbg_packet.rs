use friedlander::green::{GammaSpec, GreenQuery};
use friedlander::parametrix::wave_packet;
use friedlander::ModelContext;

fn main() {
    let ctx = ModelContext::new(64).unwrap();
    let q = GreenQuery {
        mass: 0,
        h: 1.0 / 128.0,
        a: 0.25,
        gamma: GammaSpec::Dyadic(0.25),
        t: 2.0,
        x: 0.2,
        y: -2.18,
        kmax: 0,
        tol: 5e-6,
    };
    for n in -4..=6i64 {
        let v = wave_packet(&ctx, n, &q).unwrap();
        println!("V_{n:>2} = {:+.6e} {:+.6e}i  |V| = {:.3e}", v.re, v.im, v.norm());
    }
}
