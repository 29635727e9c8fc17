"""Test suite for caplab"""
