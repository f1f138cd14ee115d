"""Cut-equivalent tree toolkit: Gomory-Hu style builders (classical, Gusfield,
partial, hybrid), a certifying prover/verifier, and hardness gadget generators,
all over exact integer max-flow."""

from .graphs import (Edge, Graph, GraphError, ParseError, Partition, contract,
                     format_graph, load_graph, parse_graph, save_graph,
                     split_node_capacities)
from .maxflow import (FlowError, FlowIntegrityError, FlowResult, flow_decompose,
                      max_flow, node_capacitated_flow)
from .cuttree import (BuildStats, CutTree, SuperNodeTree, all_pairs_matrix,
                      build_cut_tree, gomory_hu, gusfield, hybrid_cut_tree,
                      partial_tree, tree_query)
from .certifier import (CentroidPlan, CutClaim, ExpansionRecord, FlowEvidence,
                        PackingEvidence, VerifyResult, Witness, WitnessFormatError,
                        aux_size_audit, centroid_decompose, check_tree_packing,
                        eulerian_transform, pack_trees, prove, stretch_check,
                        verify, witness_from_json, witness_to_json)
from .gadgets import (BMMInstance, GadgetGraph, OVInstance, build_3ov_final,
                      build_3ov_intermediate, build_bmm_gadget, check_gadget,
                      solve_3ov_bruteforce)
