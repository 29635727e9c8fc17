"""Tests for the verification checks"""
