//! The `name:arg:arg` generator mini-language.
//!
//! Recognized forms:
//!   path:N          cycle:N         complete:N
//!   multipartite:M1,M2,...          grid:M:N
//!   mary:M:H        mycielskian:BASE:S
//!   whisker:BASE    leafy:BASE:L1,L2,...
//! where BASE is a compact name: P<n>, C<n>, or K<n>.

use indcomp::graph::Graph;

/// Adjacency storage is quadratic in the order, and everything downstream
/// of a graph this size is hopeless anyway.
const MAX_ORDER: usize = 20_000;

fn check_order(order: u128) -> Result<(), String> {
    if order > MAX_ORDER as u128 {
        return Err(format!("graph would have {order} vertices; the limit is {MAX_ORDER}"));
    }
    Ok(())
}

pub fn parse_graph_spec(spec: &str) -> Result<Graph, String> {
    let mut parts = spec.split(':');
    let name = parts.next().unwrap_or("");
    let args: Vec<&str> = parts.collect();
    let int = |s: &str| s.parse::<usize>().map_err(|_| format!("bad integer `{s}` in `{spec}`"));
    let int_list = |s: &str| -> Result<Vec<usize>, String> {
        s.split(',').map(|t| int(t.trim())).collect()
    };
    let arity = |want: usize| -> Result<(), String> {
        if args.len() == want {
            Ok(())
        } else {
            Err(format!("`{name}` takes {want} argument(s), got {}", args.len()))
        }
    };
    match name {
        "path" => {
            arity(1)?;
            let n = int(args[0])?;
            if n == 0 {
                return Err("path needs n >= 1".into());
            }
            check_order(n as u128)?;
            Ok(Graph::path(n))
        }
        "cycle" => {
            arity(1)?;
            let n = int(args[0])?;
            check_order(n as u128)?;
            Graph::cycle(n).map_err(|e| e.to_string())
        }
        "complete" => {
            arity(1)?;
            let n = int(args[0])?;
            if n == 0 {
                return Err("complete needs n >= 1".into());
            }
            check_order(n as u128)?;
            Ok(Graph::complete(n))
        }
        "multipartite" => {
            arity(1)?;
            let parts = int_list(args[0])?;
            check_order(parts.iter().map(|&m| m as u128).sum())?;
            Graph::complete_multipartite(&parts).map_err(|e| e.to_string())
        }
        "grid" => {
            arity(2)?;
            let (m, n) = (int(args[0])?, int(args[1])?);
            if m == 0 || n == 0 {
                return Err("grid needs m, n >= 1".into());
            }
            check_order(m as u128 * n as u128)?;
            Ok(Graph::grid(m, n))
        }
        "mary" => {
            arity(2)?;
            let (m, h) = (int(args[0])?, int(args[1])?);
            if m < 2 {
                return Err("mary needs m >= 2".into());
            }
            let mut order: u128 = 0;
            let mut power: u128 = 1;
            for _ in 0..=h {
                order += power;
                check_order(order)?;
                power = power.saturating_mul(m as u128);
            }
            Ok(Graph::perfect_mary_tree(m, h))
        }
        "mycielskian" => {
            arity(2)?;
            let base = parse_compact(args[0])?;
            let s = int(args[1])?;
            if s == 0 {
                return Err("mycielskian needs s >= 1".into());
            }
            check_order(base.vertex_count() as u128 * (s as u128 + 1) + 1)?;
            Ok(base.generalized_mycielskian(s))
        }
        "whisker" => {
            arity(1)?;
            Ok(parse_compact(args[0])?.whisker_all())
        }
        "leafy" => {
            arity(2)?;
            let base = parse_compact(args[0])?;
            let leaves = int_list(args[1])?;
            check_order(base.vertex_count() as u128 + leaves.iter().map(|&l| l as u128).sum::<u128>())?;
            base.attach_leaves(&leaves).map_err(|e| e.to_string())
        }
        other => Err(format!("unknown generator `{other}`")),
    }
}

/// Compact base-graph names: P<n> path, C<n> cycle, K<n> complete.
pub fn parse_compact(name: &str) -> Result<Graph, String> {
    let fail = || format!("bad base graph `{name}` (expected P<n>, C<n>, or K<n>)");
    let (kind, num) = name.split_at(1.min(name.len()));
    let n: usize = num.parse().map_err(|_| fail())?;
    match kind {
        "P" | "p" if n >= 1 => Ok(Graph::path(n)),
        "C" | "c" => Graph::cycle(n).map_err(|e| e.to_string()),
        "K" | "k" if n >= 1 => Ok(Graph::complete(n)),
        _ => Err(fail()),
    }
}
