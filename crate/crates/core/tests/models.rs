use covercalc::model::{build_named, classify_named, end_spec_of, genus_lower_bound, to_dot, EndSpec, NamedSurface};
use covercalc::{Error, Limits};

fn lim() -> Limits {
    Limits::default()
}

#[test]
fn named_models_classify_as_themselves() {
    for name in [
        NamedSurface::Flute,
        NamedSurface::LochNess,
        NamedSurface::SpottedLochNess,
        NamedSurface::CantorTree,
        NamedSurface::BloomingCantorTree,
    ] {
        let g = build_named(name).unwrap();
        for r in 2..=3 {
            let c = classify_named(&g, r, &lim()).unwrap();
            assert!(c.stabilized, "{name} at {r}");
            assert_eq!(c.surface, Some(name));
        }
    }
}

#[test]
fn end_spaces() {
    let cantor = build_named(NamedSurface::CantorTree).unwrap();
    assert_eq!(end_spec_of(&cantor, 3, &lim()).unwrap().spec, Some(EndSpec::CantorPlanar));
    let flute = build_named(NamedSurface::Flute).unwrap();
    assert_eq!(end_spec_of(&flute, 3, &lim()).unwrap().spec, Some(EndSpec::OmegaPlusOnePlanar));
}

#[test]
fn genus_grows_in_the_loch_ness_model() {
    let g = build_named(NamedSurface::LochNess).unwrap();
    let bounds: Vec<u64> = (1..=4).map(|r| genus_lower_bound(&g, r, &lim()).unwrap()).collect();
    assert!(bounds.windows(2).all(|w| w[0] < w[1]), "{bounds:?}");
}

#[test]
fn dot_has_one_node_per_piece() {
    let g = build_named(NamedSurface::CantorTree).unwrap();
    let dot = to_dot(&g, 2, &lim(), None).unwrap();
    assert!(dot.starts_with("graph pieces {"));
    let ball = g.ball(2, &lim()).unwrap();
    assert!(dot.matches("label=").count() >= ball.len());
}

#[test]
fn balls_respect_the_limit() {
    let g = build_named(NamedSurface::BloomingCantorTree).unwrap();
    let tiny = Limits { max_ball: 50, ..lim() };
    assert!(matches!(g.ball(6, &tiny), Err(Error::Resource(_))));
}
