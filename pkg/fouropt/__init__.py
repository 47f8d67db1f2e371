"""fouropt: catálogo 4-OPT verdadeiro, órbitas e motores de melhor movimento para o TSP simétrico."""

__version__ = "1.0.0"
