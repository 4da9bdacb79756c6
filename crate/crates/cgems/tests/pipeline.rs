//! Consumer-style integration tests: drive the public API the way an
//! embedding application would, across module boundaries — measure a
//! source file, assemble records, persist them, train, save the model,
//! and explain a prediction.

use std::path::Path;

use cgems::blocks::block_structure;
use cgems::dataset::schema::{self, NUM_FEATURES};
use cgems::dataset::{csvio, FeatureRecord};
use cgems::explain::{lime_explain, LimeParams};
use cgems::learn::select::select_features;
use cgems::learn::{
    evaluate, oversample, stratified_split, FeatureMatrix, MlpConfig, MlpModel, ModelArtifact,
    Standardization,
};
use cgems::lexer::tokenize;
use cgems::metrics::{cyclomatic, grade_for, halstead, maintainability_index, raw_metrics};
use cgems::similarity::similarity_report;
use cgems::LanguageProfile;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GENERATED: &str = "\
# running total with a floor
def accumulate(items, floor):
    \"\"\"Sum items, clamping each to the floor.\"\"\"
    total = 0
    for item in items:
        if item < floor:
            item = floor
        total = total + item
    return total

print(accumulate([1, 2, 3], 2))
";

const REFERENCE: &str = "\
def accumulate(values, floor):
    total = 0
    for value in values:
        total = total + max(value, floor)
    return total

print(accumulate([1, 2, 3], 2))
";

#[test]
fn one_stream_feeds_every_static_measure() {
    let profile = LanguageProfile::python();
    let stream = tokenize(GENERATED, &profile);
    assert!(stream.error.is_none());

    let raw = raw_metrics(&stream);
    assert_eq!(raw.loc, 11);
    assert_eq!(raw.comments, 1);
    assert_eq!(raw.multi, 1);
    assert_eq!(raw.blank, 1);
    assert_eq!(raw.sloc, raw.loc - raw.comments - raw.multi - raw.blank);

    let tree = block_structure(&stream, &profile).expect("well-formed source");
    let definitions = tree.definitions();
    assert_eq!(definitions.len(), 1);
    assert_eq!(definitions[0].name, "accumulate");
    assert_eq!((definitions[0].start_line, definitions[0].end_line), (2, 9));

    let cc = cyclomatic(&stream, &tree, &profile);
    assert_eq!(cc.total, 3); // one `for`, one `if`, plus the base path
    assert!(!cc.module_level);
    assert_eq!(cc.grade, grade_for(cc.average));
    assert_eq!(cc.grade, 'A');

    let hal = halstead(&stream, &profile);
    assert!(hal.distinct_operators > 0 && hal.distinct_operands > 0);
    assert!(hal.total_operators >= hal.distinct_operators);
    assert!(hal.total_operands >= hal.distinct_operands);
    assert!(hal.volume > 0.0 && hal.effort >= hal.volume);

    let mi = maintainability_index(&raw, &hal, &cc);
    assert!(mi.value > 0.0 && mi.value <= 100.0);

    let similarity = similarity_report(GENERATED, Some(REFERENCE), Some(GENERATED));
    assert_eq!(similarity.edit_count, 0); // corrected text is identical
    assert_eq!(similarity.sequence_ratio, 1.0);
    assert!(similarity.rouge_1.f1 > 0.0);
    assert!((0.0..=90.0).contains(&similarity.cosine_angle));
}

/// Build a labelled record whose numeric columns are noise except for the
/// maintainability column, which separates the classes.
fn synthetic_record(index: usize, label: u8, rng: &mut ChaCha8Rng) -> FeatureRecord {
    let mut values = [0.0f64; NUM_FEATURES];
    for value in values.iter_mut() {
        *value = rng.gen_range(0.0..10.0);
    }
    values[schema::IDX_MAINTAINABILITY] = 30.0 + 40.0 * f64::from(label) + rng.gen_range(-3.0..3.0);
    FeatureRecord {
        program: format!("P{index:02}"),
        values,
        cc_grade: 'A',
        label: Some(label),
        compilation_errors: 0,
        cc_module_level: false,
        compiling_valid: true,
        execution_time_valid: true,
        coverage_valid: true,
    }
}

#[test]
fn records_round_trip_csv_and_train_a_classifier() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let records: Vec<FeatureRecord> =
        (0..12).map(|i| synthetic_record(i, u8::from(i < 7), &mut rng)).collect();

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    csvio::write_csv(&path, &records).unwrap();
    let reloaded = csvio::read_csv(&path).unwrap();
    assert_eq!(reloaded, records);

    let matrix = FeatureMatrix::from_records(&reloaded).unwrap();
    assert_eq!(matrix.n_rows(), 12);
    assert_eq!(matrix.n_columns(), NUM_FEATURES);

    let standardization = Standardization::fit(&matrix);
    let standardized = standardization.apply(&matrix).unwrap();
    let selection = select_features(&standardized, 0.8, Some(4)).unwrap();
    assert_eq!(selection.selected.len(), 4);
    assert!(
        selection.selected.contains(&schema::FEATURES[schema::IDX_MAINTAINABILITY].to_string()),
        "the informative column must survive selection"
    );

    let reduced = standardized.subset(&selection.selected).unwrap();
    let balanced = oversample(&reduced, 4, 7).unwrap();
    assert_eq!(balanced.n_rows(), 14);

    let (train_rows, test_rows) = stratified_split(&balanced.labels, 10, 7).unwrap();
    let train = balanced.take_rows(&train_rows);
    let test = balanced.take_rows(&test_rows);
    let mut model = MlpModel::new(4, MlpConfig::default(), 7).unwrap();
    model.train(&train.rows, &train.labels).unwrap();
    let predicted: Vec<u8> = test.rows.iter().map(|row| model.predict(row).0).collect();
    let report = evaluate(&predicted, &test.labels).unwrap();
    assert_eq!(report.total(), test.n_rows());

    // Persist the model and check that named-row prediction through the
    // loaded artifact matches direct inference on prepared rows.
    let artifact = ModelArtifact::new(
        7,
        "0".repeat(64),
        selection.selected.clone(),
        standardization.subset(&selection.selected).unwrap(),
        model.clone(),
    )
    .unwrap();
    let artifact_path = dir.path().join("model.json");
    artifact.save(&artifact_path).unwrap();
    let loaded = ModelArtifact::load(&artifact_path).unwrap();
    assert_eq!(loaded.digest(), artifact.digest());

    let columns: Vec<String> = schema::FEATURES.iter().map(|s| s.to_string()).collect();
    for record in &records {
        let (label, probabilities) = loaded.predict_from_named(&columns, &record.values).unwrap();
        let direct = prepared_prediction(&standardization, &selection.selected, &model, record);
        assert_eq!(label, direct.0);
        assert_eq!(probabilities, direct.1);
    }
}

fn prepared_prediction(
    standardization: &Standardization,
    selected: &[String],
    model: &MlpModel,
    record: &FeatureRecord,
) -> (u8, [f64; 2]) {
    let full = FeatureMatrix::new(
        schema::FEATURES.iter().map(|s| s.to_string()).collect(),
        vec![record.values.to_vec()],
        vec![record.label.unwrap()],
    )
    .unwrap();
    let row = standardization.apply(&full).unwrap().subset(selected).unwrap().rows[0].clone();
    let probabilities = model.probabilities(&row);
    (model.predict(&row).0, [probabilities[0], probabilities[1]])
}

#[test]
fn explanations_follow_the_trained_model() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let records: Vec<FeatureRecord> =
        (0..12).map(|i| synthetic_record(i, u8::from(i % 2 == 0), &mut rng)).collect();
    let matrix = FeatureMatrix::from_records(&records).unwrap();
    let standardization = Standardization::fit(&matrix);
    let standardized = standardization.apply(&matrix).unwrap();
    let selection = select_features(&standardized, 0.8, Some(4)).unwrap();
    let reduced = standardized.subset(&selection.selected).unwrap();
    let mut model = MlpModel::new(4, MlpConfig::default(), 19).unwrap();
    model.train(&reduced.rows, &reduced.labels).unwrap();

    let target = |z: &[f64]| model.probabilities(z)[1];
    let params = LimeParams { n_samples: 2000, kernel_width: None, seed: 19 };
    let first = lime_explain(&target, &reduced.rows[0], &params).unwrap();
    let second = lime_explain(&target, &reduced.rows[0], &params).unwrap();

    assert_eq!(first.weights.len(), 4);
    assert!((0.0..=1.0).contains(&first.r_squared));
    assert!(first.kernel_width > 0.0);
    assert_eq!(first.weights, second.weights, "same seed must give the same explanation");
    assert_eq!(first.intercept, second.intercept);
}

#[test]
fn csv_written_files_match_in_memory_encoding() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let records: Vec<FeatureRecord> =
        (0..3).map(|i| synthetic_record(i, u8::from(i == 0), &mut rng)).collect();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    csvio::write_csv(&path, &records).unwrap();
    let from_disk = std::fs::read_to_string(&path).unwrap();
    let in_memory = csvio::to_csv_string(&records).unwrap();
    assert_eq!(from_disk, in_memory);
    assert_eq!(csvio::read_csv_str(&in_memory).unwrap(), records);
    assert!(Path::new(&path).exists());
}
