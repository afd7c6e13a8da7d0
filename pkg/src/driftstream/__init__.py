"""driftstream: live-knowledge pipeline for social post streams.

Ingest archived or synthetic post streams, keep the topic filter current
under concept drift, tag misinformation per minute window, and corroborate
tentative space-time event clusters against authoritative evidence.
"""

__version__ = "0.1.0"
