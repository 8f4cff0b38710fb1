# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
from typing import Any, Dict

from anchorsim.common.oracle_factory import create_oracle
from anchorsim.graph.core.base_graph_oracle import BaseGraphOracle


class Sdk:
    @staticmethod
    def create_oracle_from(graph_spec: Dict[str, Any]) -> BaseGraphOracle:
        """
        Create and return a graph oracle from a plain dict description.

        Args:
            graph_spec (dict): ``family`` names the graph family, the remaining
                               keys are its parameters:
                               - 'lattice': d
                               - 'tree': b (the (b+1)-regular tree)
                               - 'rooted': b, or parents (explicit finite tree)
                               - 'binary-rooted': no parameters
                               - 'gw': probs, seed, truncation_budget
                               - 'stretch': base (nested spec), law, seed
                               - 'lamplighter': base (nested spec), group ('z2', 'z3', a file
                                 path, or a dict with order/table/generators)

        Returns:
            BaseGraphOracle: the instantiated oracle.

        Example:
            >>> from anchorsim.common.sdk import Sdk
            >>>
            >>> g3 = Sdk.create_oracle_from({
            >>>     'family': 'lamplighter',
            >>>     'base': {'family': 'lattice', 'd': 3},
            >>>     'group': 'z2',
            >>> })
            >>> g3.degree(g3.basepoint)
            7
        """
        return create_oracle(graph_spec)

    @staticmethod
    def create_oracles_from(graph_specs: Dict[str, Dict[str, Any]]) -> Dict[str, BaseGraphOracle]:
        """Build several named oracles at once."""
        return {name: create_oracle(spec) for name, spec in graph_specs.items()}
