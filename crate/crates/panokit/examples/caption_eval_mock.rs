//! Score captions against key phrases with the offline judge and print the
//! resulting report.
//!
//!     cargo run --example caption_eval_mock

use panokit::eval::{eval_captioning, CaptionSample};
use panokit::judge::{MockJudge, QuestionTemplate};
use panokit::Direction;

fn sample(
    id: &str,
    phrases: &[&str],
    caption: &str,
    direction: Option<Direction>,
) -> CaptionSample {
    CaptionSample {
        id: id.into(),
        key_phrases: phrases.iter().map(|p| p.to_string()).collect(),
        predicted_caption: caption.into(),
        direction,
    }
}

fn main() -> panokit::Result<()> {
    let samples = vec![
        sample(
            "desk",
            &["wooden desk", "reading lamp"],
            "A wooden desk with a reading lamp on the corner.",
            Some(Direction::Front),
        ),
        sample(
            "sofa",
            &["red couch", "tall window", "potted plant", "rug"],
            "A red couch under a tall window, with a potted plant beside it.",
            Some(Direction::Left),
        ),
        sample(
            "ceiling",
            &["exposed beams"],
            "White plaster with EXPOSED beams running lengthwise.",
            None,
        ),
    ];

    // The offline judge answers by normalized substring match: case and
    // punctuation are ignored, word order is not.
    let judge = MockJudge::default();
    let template = QuestionTemplate::default();

    for s in &samples {
        println!(
            "{}: {} phrases, direction {:?}",
            s.id,
            s.key_phrases.len(),
            s.direction
        );
    }

    let report = eval_captioning(&samples, &judge, &template)?;
    let rendered = serde_json::to_string_pretty(&report).expect("report serializes");
    println!("\n{rendered}");
    Ok(())
}
