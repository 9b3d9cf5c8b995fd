#!/usr/bin/python
# -*- coding: utf-8 -*-


class SaddleCenterLoopsError(Exception): pass


class CommandRegistrationError(SaddleCenterLoopsError): pass


# === POLYNOMIALS ===

class PolyStructureError(SaddleCenterLoopsError): pass


class PolyContractError(SaddleCenterLoopsError): pass


class PolyFormatError(SaddleCenterLoopsError): pass


# === NORMAL FORM ===

class HomologicalSolveError(SaddleCenterLoopsError):

    def __init__(self, message, residual=None):
        super(HomologicalSolveError, self).__init__(message)
        self.residual = residual


class RadiusTooLargeError(SaddleCenterLoopsError): pass


class NormalFormError(SaddleCenterLoopsError): pass


class ScalingError(SaddleCenterLoopsError): pass


class DegenerateHypothesisError(SaddleCenterLoopsError): pass


class WrongHalfBifurcationError(SaddleCenterLoopsError): pass


# === LOCAL CHART ===

class RealnessError(SaddleCenterLoopsError): pass


class ResonanceError(SaddleCenterLoopsError): pass


# === DYNAMICS ===

class StiffnessError(SaddleCenterLoopsError): pass


class NoCrossingError(SaddleCenterLoopsError): pass


class TangencyError(SaddleCenterLoopsError): pass


class DomainError(SaddleCenterLoopsError):

    def __init__(self, message, sample=None):
        super(DomainError, self).__init__(message)
        self.sample = sample


class CenterStableError(DomainError): pass


class OutOfWindowError(DomainError): pass


# === ANNULUS ===

class CoordinateSingularityError(SaddleCenterLoopsError): pass


class GeometryError(SaddleCenterLoopsError): pass


class ConfinementError(SaddleCenterLoopsError): pass


# === CLI ===

class ConfigError(SaddleCenterLoopsError):

    def __init__(self, message, key=None):
        super(ConfigError, self).__init__(message)
        self.key = key


class InvariantFailure(SaddleCenterLoopsError): pass
