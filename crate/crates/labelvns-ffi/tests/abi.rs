//! Exercises the exported C functions directly from Rust: status codes,
//! null handling, buffer protocols and handle lifecycles.

use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use labelvns_ffi::*;

const TRIANGLE: &str = "3 3 2\n0 1 0\n0 2 1\n1 2 0\n";
const DISCONNECTED: &str = "4 2 2\n0 1 0\n2 3 1\n";

fn parse(text: &str) -> *mut LvnsGraph {
    let text = CString::new(text).unwrap();
    let mut graph = ptr::null_mut();
    let status = unsafe { lvns_graph_parse(text.as_ptr(), &mut graph) };
    assert_eq!(status, LvnsStatus::Ok);
    assert!(!graph.is_null());
    graph
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(lvns_last_error()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn parse_accessors_and_write_roundtrip() {
    let graph = parse(TRIANGLE);
    unsafe {
        assert_eq!(lvns_graph_node_count(graph), 3);
        assert_eq!(lvns_graph_edge_count(graph), 3);
        assert_eq!(lvns_graph_label_count(graph), 2);
        let mut text: *mut c_char = ptr::null_mut();
        assert_eq!(lvns_graph_write(graph, &mut text), LvnsStatus::Ok);
        assert_eq!(CStr::from_ptr(text).to_str().unwrap(), TRIANGLE);
        lvns_string_free(text);
        lvns_graph_free(graph);
    }
}

#[test]
fn parse_failures_report_status_and_message() {
    let text = CString::new("3 2 1\n0 0 0\n1 2 0\n").unwrap();
    let mut graph = ptr::null_mut();
    let status = unsafe { lvns_graph_parse(text.as_ptr(), &mut graph) };
    assert_eq!(status, LvnsStatus::ParseError);
    assert!(graph.is_null());
    assert!(last_error().contains("line 2"), "got: {}", last_error());

    let invalid = CString::new([0xffu8, 0xfe, b'x'].to_vec()).unwrap();
    let status = unsafe { lvns_graph_parse(invalid.as_ptr(), &mut graph) };
    assert_eq!(status, LvnsStatus::InvalidUtf8);
}

#[test]
fn null_arguments_are_rejected_not_crashed() {
    let mut graph = ptr::null_mut();
    unsafe {
        assert_eq!(
            lvns_graph_parse(ptr::null(), &mut graph),
            LvnsStatus::NullPointer
        );
        let text = CString::new(TRIANGLE).unwrap();
        assert_eq!(
            lvns_graph_parse(text.as_ptr(), ptr::null_mut()),
            LvnsStatus::NullPointer
        );
        assert_eq!(lvns_graph_node_count(ptr::null()), 0);
        assert_eq!(lvns_graph_edge_count(ptr::null()), 0);
        assert_eq!(lvns_graph_label_count(ptr::null()), 0);
        assert_eq!(lvns_solution_label_count(ptr::null()), 0);
        assert_eq!(lvns_solution_component_count(ptr::null()), 0);
        assert!(!lvns_solution_feasible(ptr::null()));
        assert_eq!(lvns_solution_labels(ptr::null(), ptr::null_mut(), 0), 0);
        lvns_graph_free(ptr::null_mut());
        lvns_solution_free(ptr::null_mut());
        lvns_string_free(ptr::null_mut());
    }
}

#[test]
fn generation_is_deterministic() {
    unsafe {
        let mut a = ptr::null_mut();
        let mut b = ptr::null_mut();
        assert_eq!(lvns_graph_generate(10, 4, 0.5, 5, &mut a), LvnsStatus::Ok);
        assert_eq!(lvns_graph_generate(10, 4, 0.5, 5, &mut b), LvnsStatus::Ok);
        let mut ta: *mut c_char = ptr::null_mut();
        let mut tb: *mut c_char = ptr::null_mut();
        assert_eq!(lvns_graph_write(a, &mut ta), LvnsStatus::Ok);
        assert_eq!(lvns_graph_write(b, &mut tb), LvnsStatus::Ok);
        assert_eq!(CStr::from_ptr(ta), CStr::from_ptr(tb));
        lvns_string_free(ta);
        lvns_string_free(tb);
        lvns_graph_free(a);
        lvns_graph_free(b);

        let mut bad = ptr::null_mut();
        assert_eq!(
            lvns_graph_generate(10, 4, 0.0, 5, &mut bad),
            LvnsStatus::InvalidArgument
        );
        assert!(!last_error().is_empty());
    }
}

#[test]
fn solve_returns_a_feasible_solution() {
    let graph = parse(TRIANGLE);
    unsafe {
        let mut solution = ptr::null_mut();
        let status = lvns_solve(
            graph,
            LvnsProblem::Mlst,
            0,
            LvnsVariant::Intelligent,
            0,
            20,
            0,
            &mut solution,
        );
        assert_eq!(status, LvnsStatus::Ok);
        assert!(lvns_solution_feasible(solution));
        assert_eq!(lvns_solution_label_count(solution), 1);
        assert_eq!(lvns_solution_component_count(solution), 1);
        assert_eq!(lvns_solution_iterations(solution), 20);
        assert_eq!(lvns_solution_subsets_examined(solution), 0);

        // Two-call buffer protocol: size first, then fill.
        let needed = lvns_solution_labels(solution, ptr::null_mut(), 0);
        assert_eq!(needed, 1);
        let mut labels = vec![usize::MAX; needed];
        assert_eq!(lvns_solution_labels(solution, labels.as_mut_ptr(), needed), 1);
        assert_eq!(labels, vec![0]);
        // A spanning tree on 3 nodes has 2 forest edges.
        assert_eq!(lvns_solution_forest(solution, ptr::null_mut(), 0), 2);
        let mut forest = vec![usize::MAX; 1];
        // Short buffers receive a prefix and the call still reports the
        // full length.
        assert_eq!(lvns_solution_forest(solution, forest.as_mut_ptr(), 1), 2);
        assert_ne!(forest[0], usize::MAX);
        lvns_solution_free(solution);
        lvns_graph_free(graph);
    }
}

#[test]
fn solve_error_paths_map_to_statuses() {
    unsafe {
        let graph = parse(TRIANGLE);
        let mut solution = ptr::null_mut();
        // No limit of either kind.
        assert_eq!(
            lvns_solve(
                graph,
                LvnsProblem::Mlst,
                0,
                LvnsVariant::Basic,
                0,
                0,
                0,
                &mut solution
            ),
            LvnsStatus::NoBudget
        );
        // Budget outside 1..=label_count.
        assert_eq!(
            lvns_solve(
                graph,
                LvnsProblem::Klsf,
                0,
                LvnsVariant::Basic,
                0,
                10,
                0,
                &mut solution
            ),
            LvnsStatus::InvalidArgument
        );
        lvns_graph_free(graph);

        let graph = parse(DISCONNECTED);
        assert_eq!(
            lvns_solve(
                graph,
                LvnsProblem::Mlst,
                0,
                LvnsVariant::Basic,
                0,
                10,
                0,
                &mut solution
            ),
            LvnsStatus::Unsolvable
        );
        // The forest problem accepts the same instance.
        assert_eq!(
            lvns_solve(
                graph,
                LvnsProblem::Klsf,
                1,
                LvnsVariant::Basic,
                0,
                10,
                0,
                &mut solution
            ),
            LvnsStatus::Ok
        );
        assert_eq!(lvns_solution_component_count(solution), 3);
        lvns_solution_free(solution);
        lvns_graph_free(graph);
    }
}

#[test]
fn oracle_matches_the_known_optimum() {
    let graph = parse(TRIANGLE);
    unsafe {
        let mut solution = ptr::null_mut();
        let status = lvns_oracle(graph, LvnsProblem::Mlst, 0, &mut solution);
        assert_eq!(status, LvnsStatus::Ok);
        assert_eq!(lvns_solution_label_count(solution), 1);
        assert!(lvns_solution_feasible(solution));
        assert_eq!(lvns_solution_subsets_examined(solution), 2);
        assert_eq!(lvns_solution_iterations(solution), 0);
        let mut labels = vec![usize::MAX; 1];
        lvns_solution_labels(solution, labels.as_mut_ptr(), 1);
        assert_eq!(labels, vec![0]);
        assert_eq!(lvns_solution_forest(solution, ptr::null_mut(), 0), 2);
        lvns_solution_free(solution);
        lvns_graph_free(graph);
    }
}

#[test]
fn oracle_rejects_oversized_instances() {
    let mut text = String::from("26 25 25\n");
    for i in 0..25 {
        text.push_str(&format!("{} {} {}\n", i, i + 1, i));
    }
    let graph = parse(&text);
    unsafe {
        let mut solution = ptr::null_mut();
        assert_eq!(
            lvns_oracle(graph, LvnsProblem::Mlst, 0, &mut solution),
            LvnsStatus::LabelLimitExceeded
        );
        assert!(last_error().contains("25"));
        lvns_graph_free(graph);
    }
}
