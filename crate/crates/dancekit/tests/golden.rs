//! Golden-file tests: renders are byte-compared against frozen outputs.

use dancekit::choreography::{
    braid_schedule, render_schedule, schedule_from_cuts, RenderFormat, ScheduleContext,
};
use dancekit::codecs::{parse_braid, parse_gauss};
use dancekit::engine::{CutSet, Orientation};

#[test]
fn trefoil_text_schedule_matches_golden() {
    let seq = parse_gauss("O1U2O3U1O2U3").unwrap();
    let cuts = CutSet::new(Orientation::Forward, [0, 3]).unwrap();
    let schedule = schedule_from_cuts(&seq, &cuts).unwrap();
    let ctx = ScheduleContext::from_cuts(seq, cuts);
    let text = render_schedule(&ctx, &schedule, RenderFormat::Text).unwrap();
    assert_eq!(text, include_str!("golden/trefoil_schedule.txt"));
}

#[test]
fn torus3_svg_schedule_matches_golden() {
    let braid = parse_braid("n=2; 1 1 1").unwrap();
    let schedule = braid_schedule(&braid).unwrap();
    let ctx = ScheduleContext::for_braid(braid).unwrap();
    let svg = render_schedule(&ctx, &schedule, RenderFormat::Svg).unwrap();
    assert_eq!(svg, include_str!("golden/torus3_schedule.svg"));
    // Structural spot checks: two start dots, three crossing layers,
    // two dancer colors.
    assert_eq!(svg.matches("class=\"start\"").count(), 2);
    assert_eq!(svg.matches("class=\"over\"").count() / 2, 3);
    assert!(svg.contains("#e41a1c") && svg.contains("#377eb8"));
}
