use geodesic_cw::fixtures;
use geodesic_cw::oracle::{oracle_shortest_path, path_length};
use geodesic_cw::polygen::generate_instance;
use geodesic_cw::{shortest_path, Algorithm, Error, PathQuery, Point, Polygon};

fn assert_matches_oracle(poly: &Polygon, q: PathQuery) {
    let want = oracle_shortest_path(poly, q).unwrap();
    for alg in Algorithm::ALL {
        let got = shortest_path(alg, poly, q).unwrap();
        assert_eq!(got.len(), want.len(), "{alg} on {} -> {}", q.s, q.t);
        for (a, b) in got.iter().zip(&want) {
            assert!(a.dist(*b) < 1e-9, "{alg}: {a} vs {b}");
        }
    }
}

#[test]
fn fixtures_agree_with_oracle() {
    assert_matches_oracle(
        &fixtures::l_shape(),
        PathQuery::new(Point::new(3.5, 1.0), Point::new(1.0, 3.5)),
    );
    for k in 1..=4 {
        let (s, t) = fixtures::comb_query(k);
        assert_matches_oracle(&fixtures::comb(k), PathQuery::new(s, t));
        let (s, t) = fixtures::staircase_query(k);
        assert_matches_oracle(&fixtures::staircase(k), PathQuery::new(s, t));
    }
}

#[test]
fn random_polygons_agree_with_oracle() {
    for seed in 0..10 {
        let inst = generate_instance(20 + 3 * seed as usize, seed).unwrap();
        let pts = &inst.points;
        for i in 0..4.min(pts.len()) {
            assert_matches_oracle(
                &inst.polygon,
                PathQuery::new(pts[i], pts[pts.len() - 1 - i]),
            );
        }
    }
}

#[test]
fn reversed_query_has_same_length() {
    let inst = generate_instance(40, 9).unwrap();
    let q = PathQuery::new(inst.points[1], inst.points[inst.points.len() / 2]);
    for alg in Algorithm::ALL {
        let fwd = shortest_path(alg, &inst.polygon, q).unwrap();
        let back = shortest_path(alg, &inst.polygon, q.reversed()).unwrap();
        assert!(
            (path_length(&fwd) - path_length(&back)).abs() < 1e-9,
            "{alg}"
        );
    }
}

#[test]
fn visible_endpoints_give_a_segment() {
    let poly = fixtures::convex_quad();
    let q = PathQuery::new(Point::new(1.0, 1.0), Point::new(3.0, 2.0));
    for alg in Algorithm::ALL {
        assert_eq!(
            shortest_path(alg, &poly, q).unwrap(),
            vec![q.s, q.t],
            "{alg}"
        );
    }
}

#[test]
fn identical_endpoints_give_one_point() {
    let poly = fixtures::l_shape();
    let p = Point::new(1.0, 1.0);
    for alg in Algorithm::ALL {
        assert_eq!(
            shortest_path(alg, &poly, PathQuery::new(p, p)).unwrap(),
            vec![p],
            "{alg}"
        );
    }
}

#[test]
fn outside_points_are_rejected() {
    let poly = fixtures::l_shape();
    let q = PathQuery::new(Point::new(1.0, 1.0), Point::new(3.0, 3.0));
    for alg in Algorithm::ALL {
        assert!(
            matches!(shortest_path(alg, &poly, q), Err(Error::Precondition(_))),
            "{alg}"
        );
    }
}
