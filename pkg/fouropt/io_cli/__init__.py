"""Entrada/saída: TSPLIB, instâncias aleatórias, relatórios e a CLI."""
