//! Distributional tests of the samplers at moderate sample sizes and fixed seeds.

use lpsym::maxid::{maxid_cdf, sample_maxid_batch, MaxIdSampler, RadialRadonMeasure};
use lpsym::mixture::{coefficient_table, mixture_for_level};
use lpsym::radial::{clayton_radial_cdf, williamson_residual, QuantileTable};
use lpsym::rng::par_batch;
use lpsym::survival::{sample_lp_sphere, sample_simplex, sample_survival_batch, survival_value};
use lpsym::verify::ks::{ks_one_sample, sorted};
use lpsym::verify::stats::FrequencyCheck;
use lpsym::{Dimension, PowerParam, RadialLaw, RngStream, SurvivalSampler, VpSampler};

fn dim(d: usize) -> Dimension {
    Dimension::new(d).unwrap()
}

fn pw(p: f64) -> PowerParam {
    PowerParam::new(p).unwrap()
}

#[test]
fn vp_matches_mixture_d3_p2() {
    let (d, p) = (dim(3), pw(2.0));
    let s = VpSampler::new(d, p);
    let draws = par_batch(&RngStream::new(31, 0), 100_000, |r| Ok(s.sample(r))).unwrap();
    let mix = mixture_for_level(&coefficient_table(d, p), 3).unwrap();
    let all = sorted(draws.iter().map(|v| v.value).collect());
    let r = ks_one_sample(&all, |x| mix.cdf(x)).unwrap();
    assert!(r.pass, "{r:?}");
    let hits = draws.iter().filter(|v| v.is_atom).count();
    assert!(FrequencyCheck::new(hits, draws.len(), 0.25).within(4.0));
}

#[test]
fn vp_levels_match_their_mixtures() {
    let (d, p) = (dim(6), pw(1.7));
    let s = VpSampler::new(d, p);
    let table = coefficient_table(d, p);
    for k in 1..=6 {
        let xs = sorted(par_batch(&RngStream::new(32, k as u64), 30_000, |r| s.sample_level(k, r)).unwrap());
        let mix = mixture_for_level(&table, k).unwrap();
        let r = ks_one_sample(&xs, |x| mix.cdf(x)).unwrap();
        assert!(r.pass, "k={k}: {r:?}");
    }
}

#[test]
fn simplex_marginals_are_beta() {
    for d in [2, 3, 6] {
        let xs = sorted(
            par_batch(&RngStream::new(33, d as u64), 50_000, |r| Ok(sample_simplex(dim(d), r).0[d - 1])).unwrap(),
        );
        let e = d as i32 - 1;
        assert!(ks_one_sample(&xs, |x| 1.0 - (1.0 - x.clamp(0.0, 1.0)).powi(e)).unwrap().pass);
    }
}

#[test]
fn euclidean_quarter_circle_has_uniform_angle() {
    let xs = sorted(
        par_batch(&RngStream::new(34, 0), 50_000, |r| Ok(sample_lp_sphere(dim(2), pw(2.0), r).coords[1])).unwrap(),
    );
    let cdf = |x: f64| x.clamp(0.0, 1.0).asin() / std::f64::consts::FRAC_PI_2;
    assert!(ks_one_sample(&xs, cdf).unwrap().pass);
}

#[test]
fn clayton_radial_ks() {
    for (a, d) in [(1.75, 2), (2.0, 3), (6.5, 4)] {
        let law = RadialLaw::clayton(a, dim(d)).unwrap();
        let xs = sorted(par_batch(&RngStream::new(35, d as u64), 50_000, |r| Ok(law.sample(r))).unwrap());
        let r = ks_one_sample(&xs, |x| clayton_radial_cdf(a, dim(d), x).unwrap()).unwrap();
        assert!(r.pass, "a={a} d={d}: {r:?}");
    }
}

#[test]
fn clayton_boundary_is_a_point_mass() {
    let law = RadialLaw::clayton(2.0, dim(3)).unwrap();
    let mut rng = RngStream::new(36, 0);
    assert!((0..100).all(|_| law.sample(&mut rng) == 2.0));
}

#[test]
fn erlang_radial_williamson() {
    let law = RadialLaw::erlang(dim(4));
    let grid: Vec<f64> = (1..=12).map(|i| i as f64 * 0.5).collect();
    let r = williamson_residual(&law, &grid, 100_000, &mut RngStream::new(37, 0)).unwrap();
    assert!(r.max_z <= 4.0, "{r:?}");
    let unit = RadialLaw::unit(dim(4));
    let r = williamson_residual(&unit, &grid, 10, &mut RngStream::new(37, 1)).unwrap();
    assert_eq!(r.max_residual, 0.0);
}

#[test]
fn quantile_table_radial_matches_own_generator() {
    let knots: Vec<(f64, f64)> = (0..=20).map(|i| (i as f64 / 20.0, 0.5 + i as f64 * 0.1)).collect();
    let csv = std::iter::once("u,q".to_string())
        .chain(knots.iter().map(|(u, q)| format!("{u},{q}")))
        .collect::<Vec<_>>()
        .join("\n");
    let law = RadialLaw::table(QuantileTable::from_csv_str(&csv).unwrap(), dim(2));
    let grid = [0.3, 0.8, 1.4, 2.0];
    let r = williamson_residual(&law, &grid, 100_000, &mut RngStream::new(38, 0)).unwrap();
    assert!(r.max_z <= 4.0, "{r:?}");
}

#[test]
fn survival_probabilities_on_a_grid() {
    let cases: Vec<(RadialLaw, f64, Vec<f64>)> = vec![
        (RadialLaw::unit(dim(2)), 2.0, vec![0.3, 0.4]),
        (RadialLaw::unit(dim(3)), 1.5, vec![0.1, 0.3, 0.2]),
        (RadialLaw::clayton(3.0, dim(3)).unwrap(), 3.0, vec![0.4, 0.2, 0.3]),
        (RadialLaw::erlang(dim(2)), 1.0, vec![0.2, 0.9]),
    ];
    for (i, (law, p, z)) in cases.into_iter().enumerate() {
        let sampler = SurvivalSampler::new(pw(p), law.clone());
        let s = sample_survival_batch(&sampler, 50_000, &RngStream::new(39, i as u64)).unwrap();
        let hits = s.iter().filter(|x| x.z.iter().zip(&z).all(|(a, b)| a > b)).count();
        let f = FrequencyCheck::new(hits, s.len(), survival_value(&law, &z, pw(p)));
        assert!(f.within(4.0), "case {i}: {f:?}");
    }
}

#[test]
fn maxid_cdf_against_custom_measure_sampler() {
    // A custom step table equal to the harmonic inverse on its knots.
    let a = 1.125;
    let knots: Vec<(f64, f64)> = (1..=40).map(|j| (j as f64 * a, 1.0 / j as f64)).collect();
    let nu = RadialRadonMeasure::custom_inverse(knots).unwrap();
    let sampler = MaxIdSampler::new(dim(2), pw(2.0), nu.clone());
    let s = sample_maxid_batch(&sampler, 50_000, &RngStream::new(40, 0)).unwrap();
    let phi = |t: f64| nu.generator(dim(2), t);
    for y in [[0.2, 0.3], [0.5, 0.5], [0.8, 0.25]] {
        let hits = s.iter().filter(|m| m.y.iter().zip(&y).all(|(a, b)| a <= b)).count();
        let f = FrequencyCheck::new(hits, s.len(), maxid_cdf(phi, &y, pw(2.0)).unwrap());
        assert!(f.within(4.0), "{y:?}: {f:?}");
    }
}
