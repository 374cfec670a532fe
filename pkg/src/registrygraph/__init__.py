"""Graph-native retrieval engine for commercial-registry corpora.

The package builds a typed property graph out of registry publications
(companies, persons, events, name hubs), resolves entity aliases through
deterministic hub keys, and answers questions over the graph with a
tool-calling agent governed by a finite-state dialogue machine.  An
evaluation kit scores entity resolution, agent trajectories, and answer
quality; a small HTTP service and CLI expose the whole pipeline.
"""

__version__ = "0.1.0"
