"""Sentiment classification workbench: lexicon scoring, NB/MaxEnt/SVM over
binary bag-of-words features, seeded cross-validation and Wilcoxon tests."""

from sentibench._core import *  # noqa: F401,F403
