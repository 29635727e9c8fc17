"""Tests for the convexity certificate and appendix curves"""
