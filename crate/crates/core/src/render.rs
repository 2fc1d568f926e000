//! Plain PPM (P3) pictures of depth-`k` tile representatives.
//!
//! Floating point is used here only to place pixels.

use std::fmt::Write;

use crate::dimension::Config;
use crate::error::Result;
use crate::intersection::admissible_digits;
use crate::radix::eval_word;
use crate::sequence::DigitSeq;

const BACKGROUND: [u8; 3] = [255, 255, 255];
const ATTRACTOR: [u8; 3] = [160, 160, 160];
const INTERSECTION: [u8; 3] = [200, 30, 30];

fn words(choices: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for c in choices {
        out = out
            .into_iter()
            .flat_map(|w| {
                c.iter().map(move |&d| {
                    let mut w = w.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
    }
    out
}

/// Points `π(w)` for the depth-`depth` words of `C_{n,D}` (grey) and of
/// `C(α)` (red) on a `size` x `size` canvas. The view is the disc of radius
/// `max|d| / (|b| - 1)` around the origin, which contains the attractor.
pub fn render_ppm(cfg: &Config, alpha: &DigitSeq, depth: usize, size: usize) -> Result<String> {
    let base = cfg.base();
    let all: Vec<Vec<i64>> = (0..depth).map(|_| cfg.digits().iter().collect()).collect();
    let meet = (0..depth)
        .map(|j| admissible_digits(cfg.digits(), *alpha.get(j)).map(|s| s.into_iter().collect()))
        .collect::<Result<Vec<Vec<i64>>>>()?;

    let radius = cfg.digits().max_abs().max(1) as f64 / ((base.norm() as f64).sqrt() - 1.0);
    let size = size.max(1);
    let mut pixels = vec![BACKGROUND; size * size];
    let mut plot = |w: &[i64], colour: [u8; 3]| {
        let (x, y): (f64, f64) = eval_word(w, base).approx();
        let px = ((x + radius) / (2.0 * radius) * (size as f64 - 1.0)).round();
        let py = ((radius - y) / (2.0 * radius) * (size as f64 - 1.0)).round();
        if (0.0..size as f64).contains(&px) && (0.0..size as f64).contains(&py) {
            pixels[py as usize * size + px as usize] = colour;
        }
    };
    for w in words(&all) {
        plot(&w, ATTRACTOR);
    }
    for w in words(&meet) {
        plot(&w, INTERSECTION);
    }

    let mut out = format!("P3\n{size} {size}\n255\n");
    for row in pixels.chunks(size) {
        let line: Vec<String> = row
            .iter()
            .map(|[r, g, b]| format!("{r} {g} {b}"))
            .collect();
        writeln!(out, "{}", line.join(" ")).expect("writing to a String");
    }
    Ok(out)
}
