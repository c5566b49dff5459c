# -*- coding: utf-8 -*-
"""
Styles management for diagnostic report PDFs.
"""

from typing import Dict

from reportlab.lib.enums import TA_CENTER, TA_LEFT
from reportlab.lib.styles import ParagraphStyle, getSampleStyleSheet
from reportlab.platypus import Paragraph

# The built-in Type 1 fonts have no Greek glyphs.
GREEK_NAMES = {
    'φ': 'phi',
    'Φ': 'Phi',
    'ψ': 'psi',
    'Ψ': 'Psi',
    'ρ': 'rho',
    'Δ': 'Delta',
    'δ': 'delta',
    'ε': 'eps',
    'ω': 'omega',
    'Ω': 'Omega',
    'α': 'alpha',
    'μ': 'mu',
    'λ': 'lambda',
    '≈': '~',
    '≤': '<=',
    '≥': '>=',
    '²': '^2',
}


class StylesManager:
    """
    Fonts and paragraph styles for report PDFs, using the built-in Helvetica family.
    """

    def __init__(self):
        self.font_name = 'Helvetica'
        self.font_name_bold = 'Helvetica-Bold'

    def process_text(self, text: str) -> str:
        """
        Replace symbols the built-in fonts cannot render.

        Args:
            text (str): Input text

        Returns:
            str: Text with Greek letters spelled out
        """
        if not text:
            return text
        processed = text
        for old, new in GREEK_NAMES.items():
            processed = processed.replace(old, new)
        return processed

    def paragraph(self, text: str, style: ParagraphStyle) -> Paragraph:
        """Paragraph with symbol replacement applied."""
        return Paragraph(self.process_text(text), style)

    def create_styles(self) -> Dict[str, ParagraphStyle]:
        """
        Create the styles used by report documents.

        Returns:
            Dict[str, ParagraphStyle]: Styles by role
        """
        base_styles = getSampleStyleSheet()

        return {
            'title': ParagraphStyle(
                'ReportTitle',
                parent=base_styles['Normal'],
                fontSize=14,
                alignment=TA_CENTER,
                spaceAfter=6,
                fontName=self.font_name_bold,
            ),
            'banner': ParagraphStyle(
                'Banner',
                parent=base_styles['Normal'],
                fontSize=9,
                alignment=TA_CENTER,
                spaceAfter=10,
                fontName=self.font_name,
            ),
            'section': ParagraphStyle(
                'Section',
                parent=base_styles['Normal'],
                fontSize=11,
                alignment=TA_LEFT,
                spaceBefore=10,
                spaceAfter=4,
                fontName=self.font_name_bold,
            ),
            'body': ParagraphStyle(
                'Body',
                parent=base_styles['Normal'],
                fontSize=9,
                leading=11,
                fontName=self.font_name,
            ),
        }
