"""Align ontology process concepts to lexical semantic frames.

The pipeline has two stages: domain verbs are linked to the frames that
list them as lexical units, and ontology concepts are then linked to those
frames by denominalizing the head noun of each concept name. Automatic
candidates are filtered by subsumption/partonomy against competing
candidates and finally reviewed by a human curator whose decisions are
replayed from an append-only log.
"""

__version__ = "0.1.0"
