"""alertwise: attention-aware mediation of message notifications.

Decides whether, when, and how to alert a user about incoming messages by
weighing the expected cost of interrupting them (from a Bayesian model of
attentional focus) against the expected cost of letting the messages wait
(from a calibrated message-criticality classifier).
"""

__version__ = "0.1.0"
