# -*- coding: utf-8 -*-
"""
PDF rendering of diagnostic reports.
"""

from typing import Any, List, Sequence

from reportlab.lib import colors
from reportlab.lib.pagesizes import letter
from reportlab.lib.units import cm
from reportlab.platypus import SimpleDocTemplate, Spacer, Table, TableStyle

from ..exceptions import ArtifactError
from .styles import StylesManager


class ReportPDFBuilder:
    """
    Builds the platypus story of a DiagnosticReport.
    """

    def __init__(self, content_width: float, margin: float):
        """
        Initialize PDF builder.

        Args:
            content_width (float): Width of content area in points
            margin (float): Page margin in points
        """
        self.content_width = content_width
        self.margin = margin
        self.styles_manager = StylesManager()
        self.styles = self.styles_manager.create_styles()

    def build_report_story(self, report) -> List[Any]:
        """
        Build the story for one report.

        Args:
            report (DiagnosticReport): Report to render

        Returns:
            List of PDF story elements
        """
        data = report.to_dict()
        para = self.styles_manager.paragraph
        story = [
            para(f"Composition operator diagnostics: {data['symbol']} with Ψ = {data['psi']}", self.styles['title']),
            para(data['banner'].upper(), self.styles['banner']),
            self._create_key_value_table([
                ("Verdict", data['headline']),
                ("Δ trend", data['compactness']['delta_trend']),
                ("Angular ratio trend", data['pointwise']['angular_trend']),
                ("Orlicz ratio trend", data['pointwise']['orlicz_trend']),
                ("Schatten", f"{data['schatten']['verdict']} ({data['schatten']['reason']})"),
            ]),
        ]

        story.append(para("Carleson function and Δ", self.styles['section']))
        story.append(self._create_numeric_table(
            ["h", "ρ(h)", "stderr", "Δ(h)"],
            [[row['h'], row['rho'], row['stderr'], row['delta']] for row in data['rows']],
        ))

        story.append(para("Pointwise ratios", self.styles['section']))
        story.append(self._create_numeric_table(
            ["r", "angular", "Orlicz"],
            [[a['r'], a['ratio'], o['ratio']]
             for a, o in zip(data['pointwise']['angular'], data['pointwise']['orlicz'])],
        ))

        if data['luecking_sums']:
            story.append(para("Luecking sums", self.styles['section']))
            story.append(self._create_numeric_table(
                ["p", "last partial sum", "verdict"],
                [[s['p'], s['partial_sums'][-1], s['verdict']] for s in data['luecking_sums']],
            ))
        if data['luecking_integrals']:
            story.append(para("Luecking integrals", self.styles['section']))
            story.append(self._create_numeric_table(
                ["p", "λ form", "proof form", "verdicts"],
                [[i['p'], i['lambda_form'][-1], i['proof_form'][-1],
                  f"{i['lambda_verdict']} / {i['proof_verdict']}"] for i in data['luecking_integrals']],
            ))
        story.append(Spacer(1, 0.4 * cm))
        return story

    def _create_key_value_table(self, rows: Sequence[tuple]) -> Table:
        """Two-column summary table."""
        cells = [[self.styles_manager.paragraph(k, self.styles['body']),
                  self.styles_manager.paragraph(str(v), self.styles['body'])] for k, v in rows]
        table = Table(cells, colWidths=[self.content_width * 0.3, self.content_width * 0.7])
        table.setStyle(TableStyle([
            ('BOX', (0, 0), (-1, -1), 1, colors.black),
            ('INNERGRID', (0, 0), (-1, -1), 0.25, colors.grey),
            ('VALIGN', (0, 0), (-1, -1), 'TOP'),
        ] + self._get_table_padding_style(3)))
        return table

    def _create_numeric_table(self, header: Sequence[str], rows: Sequence[Sequence[Any]]) -> Table:
        """Table with a bold header row; floats shown with 6 significant digits."""
        def cell(value):
            return f"{value:.6g}" if isinstance(value, float) else str(value)

        data = [[self.styles_manager.process_text(h) for h in header]]
        data += [[cell(v) for v in row] for row in rows]
        table = Table(data, colWidths=[self.content_width / len(header)] * len(header), repeatRows=1)
        table.setStyle(TableStyle([
            ('FONTNAME', (0, 0), (-1, 0), self.styles_manager.font_name_bold),
            ('FONTNAME', (0, 1), (-1, -1), self.styles_manager.font_name),
            ('FONTSIZE', (0, 0), (-1, -1), 8),
            ('ALIGN', (0, 0), (-1, -1), 'RIGHT'),
            ('LINEBELOW', (0, 0), (-1, 0), 0.75, colors.black),
            ('BOX', (0, 0), (-1, -1), 0.75, colors.black),
        ] + self._get_table_padding_style(2, top_bottom=1)))
        return table

    def _get_table_padding_style(self, padding: float = 2, top_bottom: float = None) -> List[tuple]:
        """Get standard table padding style."""
        tb_padding = top_bottom if top_bottom is not None else padding
        return [
            ('LEFTPADDING', (0, 0), (-1, -1), padding),
            ('RIGHTPADDING', (0, 0), (-1, -1), padding),
            ('TOPPADDING', (0, 0), (-1, -1), tb_padding),
            ('BOTTOMPADDING', (0, 0), (-1, -1), tb_padding),
        ]


def render_report_pdf(report, output_path: str) -> str:
    """
    Render a DiagnosticReport to a PDF file.

    Args:
        report (DiagnosticReport): Report
        output_path (str): Path for output PDF file

    Returns:
        str: Path to generated PDF

    Raises:
        ArtifactError: If PDF generation fails
    """
    margin = 1.5 * cm
    builder = ReportPDFBuilder(letter[0] - 2 * margin, margin)
    try:
        doc = SimpleDocTemplate(
            output_path,
            pagesize=letter,
            rightMargin=builder.margin,
            leftMargin=builder.margin,
            topMargin=builder.margin,
            bottomMargin=builder.margin,
            invariant=1,
        )
        doc.build(builder.build_report_story(report))
        return output_path
    except Exception as e:
        raise ArtifactError(f"Failed to generate report PDF: {str(e)}")
