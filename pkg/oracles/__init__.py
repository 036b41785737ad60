"""Brute-force and Monte-Carlo oracles, used to check the closed forms on small lotteries"""
