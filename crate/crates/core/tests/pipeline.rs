use std::io::Write;

use evi_core::distributions::{DistributionSpec, SeededStream};
use evi_core::estimators::{estimate, EstimatorKind};
use evi_core::montecarlo::{median, replicate_estimates};
use evi_core::{OrderedSample, SampleFormat};

#[test]
fn consistency_trend_weibull_m() {
    let spec = DistributionSpec::weibull_m(-1.0).unwrap();
    let med = |n, k| {
        let (est, errors) = replicate_estimates(&spec, n, 200, EstimatorKind::Gg, k, 4.0, 5);
        assert_eq!(errors, 0);
        let dev: Vec<f64> = est.iter().map(|e| (e + 1.0).abs()).collect();
        median(&dev).unwrap()
    };
    assert!(med(5_000, 1_000) < med(500, 100));
}

#[test]
fn file_to_estimates() {
    let spec = DistributionSpec::frechet(0.5).unwrap();
    let sample = spec.sample(3_000, SeededStream::new(8, 1)).unwrap();
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# frechet draws").unwrap();
    for v in sample.values().iter().rev() {
        writeln!(file, "{v}").unwrap();
    }
    let loaded = OrderedSample::load(file.path(), &SampleFormat::Plain).unwrap();
    assert_eq!(loaded, sample);
    for kind in EstimatorKind::ALL {
        let xi = estimate(kind, &loaded, 300, 4.0).unwrap().xi_hat;
        assert!((xi - 0.5).abs() < 0.35, "{kind}: {xi}");
    }
}
