mod common;

use common::*;
use online_cake::procedures::{self, replay, run};
use online_cake::{Event, Knowledge, Procedure, Scenario, Valuation};

fn assert_alloc(o: &online_cake::Outcome, expected: &[(u32, online_cake::Piece)]) {
    for (p, piece) in expected {
        assert_eq!(o.piece(pid(*p)), piece, "piece of P{p}");
    }
    assert_eq!(o.allocation.len(), expected.len());
}

#[test]
fn running_example_cut_and_choose() {
    let s = running_example(Procedure::CutAndChoose);
    let o = procedures::run_cut_and_choose(&s).unwrap();
    assert_alloc(
        &o,
        &[(2, iv("0", "2/3")), (3, iv("2/3", "5/6")), (1, iv("5/6", "1"))],
    );
    let p1 = &s.players[&pid(1)];
    assert_eq!(o.own_value(pid(1), p1), q("1/3"));
    assert_eq!(o.own_value(pid(2), &s.players[&pid(2)]), q("1/2"));
    let p3 = &s.players[&pid(3)];
    assert_eq!(
        o.own_value(pid(3), p3),
        p3.value(&o.arrival_snapshot[&pid(3)].remaining)
    );
    replay::verify(&s, &o).unwrap();
}

#[test]
fn running_example_moving_knife() {
    let s = running_example(Procedure::MovingKnife);
    let o = procedures::run_moving_knife(&s).unwrap();
    assert_alloc(
        &o,
        &[(2, iv("0", "5/9")), (3, iv("5/9", "47/72")), (1, iv("47/72", "1"))],
    );
    let winning_calls: Vec<_> = o
        .trace
        .iter()
        .filter_map(|e| match e {
            Event::KnifeCall {
                player, position, ..
            } if *player != pid(1) => Some(position.clone()),
            _ => None,
        })
        .collect();
    assert_eq!(winning_calls, vec![q("5/9"), q("47/72")]);
    replay::verify(&s, &o).unwrap();
}

#[test]
fn running_example_mark_and_choose() {
    let s = running_example(Procedure::MarkAndChoose);
    let o = procedures::run_mark_and_choose(&s).unwrap();
    assert_alloc(
        &o,
        &[
            (1, iv("2/3", "5/6")),
            (2, iv("7/12", "2/3").union(&iv("5/6", "1"))),
            (3, iv("0", "7/12")),
        ],
    );
    let first_marks = o.trace.iter().find_map(|e| match e {
        Event::Mark { marker, pieces } if *marker == pid(1) => Some(pieces.clone()),
        _ => None,
    });
    assert_eq!(
        first_marks.unwrap(),
        vec![iv("0", "2/3"), iv("2/3", "5/6"), iv("5/6", "1")]
    );
    // P3 sees [0,7/12] worth 7/9 and the other piece worth 1/9 under the
    // uniform-on-[0,3/4] reading.
    let p3 = &s.players[&pid(3)];
    assert_eq!(p3.value(o.piece(pid(3))), q("7/9"));
    assert_eq!(p3.value(o.piece(pid(2))), q("1/9"));
    replay::verify(&s, &o).unwrap();
}

#[test]
fn four_players_all_procedures_split_into_quarters() {
    for procedure in Procedure::MAIN {
        let s = four_players(procedure);
        let o = run(&s).unwrap();
        assert_alloc(
            &o,
            &[
                (1, iv("0", "1/4")),
                (2, iv("1/4", "1/2")),
                (3, iv("1/2", "3/4")),
                (4, iv("3/4", "1")),
            ],
        );
        let values: Vec<_> = (1..=4)
            .map(|p| o.own_value(pid(p), &s.players[&pid(p)]))
            .collect();
        assert_eq!(values, vec![q("3"), q("4"), q("3"), q("2")], "{procedure}");
        replay::verify(&s, &o).unwrap();
    }
}

#[test]
fn four_players_cut_and_choose_declines() {
    let o = run(&four_players(Procedure::CutAndChoose)).unwrap();
    assert!(o.trace.contains(&Event::Decline {
        player: pid(2),
        slice: iv("0", "1/4")
    }));
    // P4 declines [1/2,3/4], leaving P3 with the cut slice.
    assert!(o.trace.contains(&Event::Decline {
        player: pid(4),
        slice: iv("1/2", "3/4")
    }));
}

#[test]
fn knife_order_instance_in_id_order() {
    let o = run(&knife_order_instance()).unwrap();
    assert_alloc(
        &o,
        &[(1, iv("0", "1/3")), (2, iv("1/3", "2/3")), (3, iv("2/3", "1"))],
    );
}

#[test]
fn mark_order_instance_both_orders() {
    let s = mark_order_instance();
    let o = run(&s).unwrap();
    assert_alloc(
        &o,
        &[(1, iv("0", "1/3")), (2, iv("1/3", "2/3")), (3, iv("2/3", "1"))],
    );
    assert_eq!(o.own_value(pid(3), &s.players[&pid(3)]), q("10"));

    // P3 now hands P1 the piece P3 values least, [1/3,2/3], and ends with 6.
    let swapped = s.clone().with_order(&[1, 3, 2]);
    let o = run(&swapped).unwrap();
    assert_eq!(o.piece(pid(1)), &iv("1/3", "2/3"));
    assert_eq!(o.own_value(pid(3), &s.players[&pid(3)]), q("6"));
    replay::verify(&swapped, &o).unwrap();
}

#[test]
fn dictator_baseline() {
    let s = running_example(Procedure::Dictator);
    let o = run(&s).unwrap();
    assert!(o.piece(pid(1)).is_whole());
    assert!(o.piece(pid(2)).is_empty() && o.piece(pid(3)).is_empty());
    replay::verify(&s, &o).unwrap();
}

#[test]
fn misreport_changes_the_cut() {
    let s = four_players(Procedure::CutAndChoose);
    assert_eq!(s.effective_valuation(pid(2)).unwrap(), &s.players[&pid(2)]);
    let lying = s.clone().with_misreport(pid(2), p2_misreport());
    assert_eq!(lying.effective_valuation(pid(2)).unwrap(), &p2_misreport());
    assert_eq!(lying.true_valuation(pid(2)).unwrap(), &s.players[&pid(2)]);
    let o = run(&lying).unwrap();
    assert!(o.trace.contains(&Event::CutOffer {
        cutter: pid(2),
        slice: iv("1/4", "5/8")
    }));
    assert_eq!(o.piece(pid(2)), &iv("1/4", "5/8"));
    replay::verify(&lying, &o).unwrap();
}

#[test]
fn bounded_tight_bound_is_identical() {
    for s in [
        running_example(Procedure::BoundedCutAndChoose),
        four_players(Procedure::BoundedCutAndChoose),
    ] {
        let n = s.n();
        let bounded = s.with_bound(n, Knowledge::KnownPositionKnownLast);
        let a = run(&bounded).unwrap();
        let b = procedures::run_cut_and_choose(&bounded).unwrap();
        assert_eq!(a, b);
        replay::verify(&bounded, &a).unwrap();
    }
}

#[test]
fn bounded_unknown_last_times_out_with_everything_allocated() {
    for s in [
        running_example(Procedure::BoundedCutAndChoose),
        four_players(Procedure::BoundedCutAndChoose),
        Scenario::new(
            Procedure::BoundedCutAndChoose,
            vec![Valuation::uniform(), Valuation::uniform()],
        ),
    ] {
        let s = s.with_bound(5, Knowledge::UnknownLast);
        let o = run(&s).unwrap();
        let timeouts = o.trace.iter().filter(|e| matches!(e, Event::Timeout(_))).count();
        assert_eq!(timeouts, 1);
        let all = o
            .allocation
            .values()
            .fold(online_cake::Piece::empty(), |acc, p| acc.union(p));
        assert!(all.is_whole());
        replay::verify(&s, &o).unwrap();
    }
}

#[test]
fn bounded_unknown_position_uses_whole_cake_cue() {
    // Three uniform players, bound 4. The second arrival sees the whole cake
    // and wants a quarter; the offer is exactly a quarter, so they accept.
    let u = Valuation::uniform;
    let s = Scenario::new(Procedure::BoundedCutAndChoose, vec![u(), u(), u()])
        .with_bound(4, Knowledge::UnknownPositionKnownLast);
    let o = run(&s).unwrap();
    assert_eq!(o.piece(pid(2)), &iv("0", "1/4"));
    // P1 then cuts a third of [1/4,1]: [1/4,1/2]. P3 is last and wants half
    // of 3/4, so declines; P1 leaves with it and P3 keeps [1/2,1].
    assert_eq!(o.piece(pid(1)), &iv("1/4", "1/2"));
    assert_eq!(o.piece(pid(3)), &iv("1/2", "1"));
    replay::verify(&s, &o).unwrap();
}

#[test]
fn replay_rejects_tampered_traces() {
    let s = running_example(Procedure::CutAndChoose);
    let mut o = run(&s).unwrap();
    let accept = o
        .trace
        .iter()
        .position(|e| matches!(e, Event::Accept { .. }))
        .unwrap();
    if let Event::Accept { player, slice } = o.trace[accept].clone() {
        o.trace[accept] = Event::Decline { player, slice };
    }
    let err = replay::verify(&s, &o).unwrap_err();
    assert_eq!(err.index, accept);

    let s = running_example(Procedure::MovingKnife);
    let mut o = run(&s).unwrap();
    let call = o
        .trace
        .iter()
        .position(|e| matches!(e, Event::KnifeCall { .. }))
        .unwrap();
    if let Event::KnifeCall { player, round, .. } = o.trace[call].clone() {
        o.trace[call] = Event::KnifeCall {
            player,
            position: q("1/2"),
            round,
        };
    }
    assert!(replay::verify(&s, &o).is_err());
}

#[test]
fn runs_are_deterministic() {
    for procedure in Procedure::MAIN {
        let s = four_players(procedure);
        assert_eq!(run(&s).unwrap(), run(&s).unwrap());
    }
}
