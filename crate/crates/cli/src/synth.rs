//! Seeded synthetic datasets in the tab-separated, label-first layout the
//! other commands read.

use std::f64::consts::PI;
use std::fmt::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::args::{SynthArgs, SynthKind};
use crate::failure::{CliResult, Failure};

const AR_BURN_IN: usize = 500;

pub fn generate(args: &SynthArgs) -> CliResult<String> {
    if args.samples == 0 || args.length < 2 {
        return Err(Failure::usage("synth needs --samples >= 1 and --length >= 2"));
    }
    if !args.noise.is_finite() || args.noise < 0.0 {
        return Err(Failure::usage("--noise must be a finite non-negative number"));
    }
    match args.kind {
        SynthKind::Ar1 if args.phi.is_nan() || args.phi.abs() >= 1.0 => {
            return Err(Failure::usage("--phi must lie in (-1, 1)"));
        }
        SynthKind::Sine | SynthKind::Motifs if args.period < 2 => {
            return Err(Failure::usage("--period must be at least 2"));
        }
        _ => {}
    }

    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut text = String::new();
    for i in 0..args.samples {
        let (label, values) = sample(args, i, &mut rng);
        text.push_str(label);
        for v in values {
            write!(text, "\t{v}").unwrap();
        }
        text.push('\n');
    }
    Ok(text)
}

fn gauss(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

fn sample(args: &SynthArgs, i: usize, rng: &mut ChaCha8Rng) -> (&'static str, Vec<f64>) {
    let n = args.length;
    match args.kind {
        SynthKind::Noise => ("1", (0..n).map(|_| gauss(rng)).collect()),
        SynthKind::Ar1 => {
            let mut x = 0.0;
            let mut out = Vec::with_capacity(n);
            for t in 0..AR_BURN_IN + n {
                x = args.phi * x + gauss(rng);
                if t >= AR_BURN_IN {
                    out.push(x);
                }
            }
            ("1", out)
        }
        SynthKind::Sine => {
            let phase = rng.random::<f64>() * 2.0 * PI;
            let p = args.period as f64;
            let v = (0..n)
                .map(|t| (2.0 * PI * t as f64 / p + phase).sin() + args.noise * gauss(rng))
                .collect();
            ("1", v)
        }
        SynthKind::Motifs => {
            let up = i.is_multiple_of(2);
            let shift = rng.random_range(0..args.period);
            let p = args.period as f64;
            let v = (0..n)
                .map(|t| {
                    let ramp = ((t + shift) % args.period) as f64 / p;
                    let v = if up { ramp } else { 1.0 - ramp };
                    v + args.noise * gauss(rng)
                })
                .collect();
            (if up { "1" } else { "2" }, v)
        }
    }
}
