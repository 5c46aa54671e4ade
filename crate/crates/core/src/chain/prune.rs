//! Bipartite digraph of the index-coding problem fixed by a decoding choice,
//! and the pruning that turns a chain run into an acyclic subgraph.

use std::collections::HashMap;

use super::run::{ChainRun, DecodingChoice};
use crate::error::{validation, Result};
use crate::problem::Problem;
use crate::set::MessageSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphNode {
    Message(usize),
    Receiver(MessageSet),
}

/// Receiver `H` points at each message it knows; message `D(H)` points at `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteProblemGraph {
    messages: Vec<usize>,
    receivers: Vec<MessageSet>,
    edges: Vec<(GraphNode, GraphNode)>,
}

impl BipartiteProblemGraph {
    /// The unpruned graph `G_D`.
    pub fn from_choice(p: &Problem, d: &DecodingChoice) -> Result<Self> {
        Self::on_receivers(p, d, p.present().iter().copied())
    }

    fn on_receivers(p: &Problem, d: &DecodingChoice, receivers: impl Iterator<Item = MessageSet>) -> Result<Self> {
        let mut edges = Vec::new();
        let mut kept = Vec::new();
        for h in receivers {
            let want = d.get(&h).ok_or_else(|| validation(format!("no decoded message for {h}")))?;
            for i in h.iter() {
                edges.push((GraphNode::Receiver(h), GraphNode::Message(i)));
            }
            edges.push((GraphNode::Message(want), GraphNode::Receiver(h)));
            kept.push(h);
        }
        Ok(Self { messages: (1..=p.m()).collect(), receivers: kept, edges })
    }

    pub fn messages(&self) -> &[usize] {
        &self.messages
    }

    pub fn receivers(&self) -> &[MessageSet] {
        &self.receivers
    }

    pub fn edges(&self) -> &[(GraphNode, GraphNode)] {
        &self.edges
    }

    pub fn message_count(&self) -> usize {
        self.messages.len()
    }

    pub fn remove_message(&mut self, i: usize) {
        self.messages.retain(|&x| x != i);
        let node = GraphNode::Message(i);
        self.edges.retain(|&(a, b)| a != node && b != node);
    }

    pub fn remove_receiver(&mut self, h: &MessageSet) {
        self.receivers.retain(|x| x != h);
        let node = GraphNode::Receiver(*h);
        self.edges.retain(|&(a, b)| a != node && b != node);
    }

    /// Drops message nodes with no outgoing edge (wanted by no remaining receiver).
    pub fn remove_idle_messages(&mut self) {
        let idle: Vec<usize> = self
            .messages
            .iter()
            .copied()
            .filter(|&i| !self.edges.iter().any(|&(a, _)| a == GraphNode::Message(i)))
            .collect();
        for i in idle {
            self.remove_message(i);
        }
    }

    /// Directed acyclicity by iterative three-colour depth-first search.
    pub fn is_acyclic(&self) -> bool {
        let mut id: HashMap<GraphNode, usize> = HashMap::new();
        for &i in &self.messages {
            let n = id.len();
            id.insert(GraphNode::Message(i), n);
        }
        for &h in &self.receivers {
            let n = id.len();
            id.insert(GraphNode::Receiver(h), n);
        }
        let mut adj = vec![Vec::new(); id.len()];
        for (a, b) in &self.edges {
            adj[id[a]].push(id[b]);
        }

        #[derive(Clone, Copy, PartialEq)]
        enum Colour {
            White,
            Grey,
            Black,
        }
        let mut colour = vec![Colour::White; adj.len()];
        for root in 0..adj.len() {
            if colour[root] != Colour::White {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            colour[root] = Colour::Grey;
            while let Some(top) = stack.last_mut() {
                let (node, next) = *top;
                if let Some(&succ) = adj[node].get(next) {
                    top.1 += 1;
                    match colour[succ] {
                        Colour::Grey => return false,
                        Colour::White => {
                            colour[succ] = Colour::Grey;
                            stack.push((succ, 0));
                        }
                        Colour::Black => {}
                    }
                } else {
                    colour[node] = Colour::Black;
                    stack.pop();
                }
            }
        }
        true
    }
}

#[derive(Debug, Clone)]
pub struct PruneOutcome {
    pub graph: BipartiteProblemGraph,
    pub acyclic: bool,
    pub message_count: usize,
}

/// Prunes `G_D` along a chain run: drop present receivers the run did not
/// hit, drop skipped messages, then drop messages nobody wants. The result
/// is acyclic with `m - |S|` message nodes.
pub fn prune_via_chain(p: &Problem, d: &DecodingChoice, run: &ChainRun) -> Result<PruneOutcome> {
    check_run(p, d, run)?;
    // building only the hit receivers is G_D followed by pruning the rest
    let hit = run.hits.iter().filter(|h| h.present).map(|h| h.receiver);
    let mut graph = BipartiteProblemGraph::on_receivers(p, d, hit)?;
    for i in run.skipped.iter() {
        graph.remove_message(i);
    }
    graph.remove_idle_messages();
    let acyclic = graph.is_acyclic();
    let message_count = graph.message_count();
    Ok(PruneOutcome { graph, acyclic, message_count })
}

fn check_run(p: &Problem, d: &DecodingChoice, run: &ChainRun) -> Result<()> {
    let m = p.m();
    if run.chain.len() != m || run.hits.len() != m || run.skipped.universe() != m {
        return Err(validation("run does not cover the message universe"));
    }
    let mut c = MessageSet::empty(m)?;
    let mut absent_hits = 0;
    for (k, (&next, hit)) in run.chain.iter().zip(&run.hits).enumerate() {
        if hit.receiver != c {
            return Err(validation(format!("hit {k} is {} but the chain prefix is {c}", hit.receiver)));
        }
        if hit.present != p.is_present(&c) {
            return Err(validation(format!("presence flag of hit {c} is wrong")));
        }
        if next == 0 || next > m || c.contains(next) {
            return Err(validation(format!("chain step {k} repeats or leaves the universe")));
        }
        if hit.present {
            if d.get(&c) != Some(next) || run.skipped.contains(next) {
                return Err(validation(format!("present receiver {c} must decode D({c})")));
            }
        } else {
            if !run.skipped.contains(next) {
                return Err(validation(format!("message {next} after absent {c} must be skipped")));
            }
            absent_hits += 1;
        }
        c = c.with(next);
    }
    if absent_hits != run.skipped.len() {
        return Err(validation("skipped set does not match the absent hits"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::run::{run_chain, SkipPolicy};

    fn set(m: usize, xs: &[usize]) -> MessageSet {
        MessageSet::from_indices(m, xs).unwrap()
    }

    #[test]
    fn example1_pruned_graph() {
        let p = Problem::new(3, &[vec![], vec![1], vec![2], vec![1, 2], vec![2, 3]]).unwrap();
        let d = DecodingChoice::from_fn(&p, |h| match h.to_vec().as_slice() {
            [] => 3,
            [2, 3] => 1,
            _ => h.complement().first().unwrap(),
        })
        .unwrap();
        let run = run_chain(&p, &d, SkipPolicy::AvoidAbsentGreedy).unwrap();
        let out = prune_via_chain(&p, &d, &run).unwrap();
        assert!(out.acyclic);
        assert_eq!(out.message_count, 2);
        assert_eq!(out.graph.messages(), &[1, 3]);
        assert_eq!(out.graph.receivers(), &[set(3, &[]), set(3, &[2, 3])]);
    }

    #[test]
    fn complete_problem_keeps_all_messages() {
        let p = Problem::complete(3).unwrap();
        let d = DecodingChoice::lowest(&p);
        let run = run_chain(&p, &d, SkipPolicy::LexicographicMin).unwrap();
        let out = prune_via_chain(&p, &d, &run).unwrap();
        assert!(out.acyclic);
        assert_eq!(out.message_count, 3);
    }

    #[test]
    fn unpruned_graph_can_be_cyclic() {
        // {1} wants 2 and {2} wants 1: 1 -> {2} -> 2 -> {1} -> 1
        let p = Problem::new(2, &[vec![1], vec![2]]).unwrap();
        let d = DecodingChoice::lowest(&p);
        assert!(!BipartiteProblemGraph::from_choice(&p, &d).unwrap().is_acyclic());
    }

    #[test]
    fn rejects_inconsistent_runs() {
        let p = Problem::complete(3).unwrap();
        let d = DecodingChoice::lowest(&p);
        let mut run = run_chain(&p, &d, SkipPolicy::LexicographicMin).unwrap();
        run.chain.swap(0, 1);
        assert!(prune_via_chain(&p, &d, &run).is_err());
        let mut run = run_chain(&p, &d, SkipPolicy::LexicographicMin).unwrap();
        run.skipped = run.skipped.with(1);
        assert!(prune_via_chain(&p, &d, &run).is_err());
    }
}
