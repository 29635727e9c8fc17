"""Tests for nonlinearities and the growth hypotheses"""
