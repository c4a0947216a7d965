"""
RoughP HTML Report Generator
Description: render the latest scan, generator and validation reports in a
reports directory into a single HTML page with an embedded failure-rate chart.
"""

import base64
import io
import json
import logging
import os
from datetime import datetime

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402
from jinja2 import Template  # noqa: E402

logger = logging.getLogger(__name__)

HTML_TEMPLATE = """
<!DOCTYPE html>
<html lang="en">
<head>
    <meta charset="UTF-8">
    <title>RoughP Verification Report</title>
    <style>
        body { font-family: 'Segoe UI', Tahoma, Geneva, Verdana, sans-serif; margin: 0; padding: 20px; background-color: #f5f5f5; }
        .container { max-width: 1200px; margin: 0 auto; background: white; padding: 30px; border-radius: 10px; }
        .header { text-align: center; border-bottom: 3px solid #007bff; padding-bottom: 20px; margin-bottom: 30px; }
        .section h2 { color: #333; border-left: 4px solid #007bff; padding-left: 15px; }
        .status.pass { color: #28a745; font-weight: bold; }
        .status.fail { color: #dc3545; font-weight: bold; }
        .chart { text-align: center; margin: 20px 0; }
        .chart img { max-width: 100%; }
        table { width: 100%; border-collapse: collapse; margin: 20px 0; }
        th, td { padding: 8px; text-align: left; border-bottom: 1px solid #ddd; }
        th { background-color: #f8f9fa; }
    </style>
</head>
<body>
<div class="container">
    <div class="header">
        <h1>RoughP Verification Report</h1>
        <p><strong>Generated:</strong> {{ timestamp }}</p>
    </div>

    {% for name, scan in scans.items() %}
    <div class="section">
        <h2>Alpha-sphere scan: {{ name }}</h2>
        {% if charts[name] %}
        <div class="chart"><img src="data:image/png;base64,{{ charts[name] }}"></div>
        {% endif %}
        <table>
            <tr>{% for col in scan_columns %}<th>{{ col }}</th>{% endfor %}</tr>
            {% for row in scan %}
            <tr>{% for col in scan_columns %}<td>{{ row[col] }}</td>{% endfor %}</tr>
            {% endfor %}
        </table>
    </div>
    {% endfor %}

    {% for name, gen in generations.items() %}
    <div class="section">
        <h2>Generator: {{ name }}</h2>
        <p>n={{ gen.request.n }}, m={{ gen.request.m }}, sign={{ gen.request.sign }},
           count={{ gen.request.count }}, seed={{ gen.request.seed }}</p>
        <table>
            {% for key, value in gen.aggregates.items() %}
            <tr><th>{{ key }}</th><td>{{ value }}</td></tr>
            {% endfor %}
            <tr><th>length check</th>
                <td class="status {{ gen.length_check.status|lower }}">{{ gen.length_check.status }}</td></tr>
        </table>
    </div>
    {% endfor %}

    {% for name, growth in growths.items() %}
    <div class="section">
        <h2>Encoding growth: {{ name }}</h2>
        <p>fitted degree: |phi| {{ growth.phi_degree }}, |alpha| {{ growth.alpha_degree }}</p>
        <table>
            <tr><th>n</th><th>max |phi(x)|</th><th>max |alpha(z)|</th></tr>
            {% for row in growth.rows %}
            <tr><td>{{ row.n }}</td><td>{{ row.max_phi }}</td><td>{{ row.max_alpha }}</td></tr>
            {% endfor %}
        </table>
    </div>
    {% endfor %}

    {% for name, validation in validations.items() %}
    <div class="section">
        <h2>Paddability contract: {{ name }}</h2>
        <table>
            <tr><th>Check</th><th>Status</th><th>Checked</th><th>Counterexample</th></tr>
            {% for case in validation.test_cases %}
            <tr>
                <td>{{ case.test }}</td>
                <td class="status {{ case.status|lower }}">{{ case.status }}</td>
                <td>{{ case.checked }}</td>
                <td>{{ case.counterexample or '' }}</td>
            </tr>
            {% endfor %}
        </table>
    </div>
    {% endfor %}
</div>
</body>
</html>
"""


class RoughPReportGenerator:
    def __init__(self, reports_dir="reports"):
        self.reports_dir = reports_dir
        self.ensure_reports_dir()

    def ensure_reports_dir(self):
        """Ensure reports directory exists"""
        if not os.path.exists(self.reports_dir):
            os.makedirs(self.reports_dir)

    def _load_prefixed(self, prefix):
        results = {}
        for filename in sorted(os.listdir(self.reports_dir)):
            if filename.startswith(prefix) and filename.endswith(".json"):
                with open(os.path.join(self.reports_dir, filename), "r", encoding="utf-8") as f:
                    results[filename[len(prefix) : -len(".json")]] = json.load(f)
        return results

    def load_latest_results(self):
        """Load scan, generator, validation and growth JSON reports"""
        return {
            "scans": self._load_prefixed("scan_"),
            "generations": self._load_prefixed("generate_"),
            "validations": self._load_prefixed("validation_"),
            "growths": self._load_prefixed("growth_"),
        }

    def create_scan_chart(self, rows):
        """Measured unknown-rate against k^(-n/2), log scale"""
        frame = pd.DataFrame(rows)
        if frame.empty:
            return None
        frame["rate"] = frame["rate"].astype(float)
        frame["bound"] = frame["bound"].astype(float)

        plt.figure(figsize=(10, 6))
        plt.semilogy(frame["n"], frame["bound"], "--", color="#4ECDC4", label="bound k^(-n/2)")
        positive = frame[frame["rate"] > 0]
        plt.semilogy(positive["n"], positive["rate"], "o", color="#FF6B6B", label="measured rate")
        plt.title("Unknown answers on alpha-spheres")
        plt.xlabel("n")
        plt.ylabel("fraction of sphere")
        plt.legend()
        plt.tight_layout()

        buffer = io.BytesIO()
        plt.savefig(buffer, format="png", dpi=120, bbox_inches="tight")
        buffer.seek(0)
        plt.close()
        return base64.b64encode(buffer.getvalue()).decode()

    def generate_html_report(self, filename=None):
        """Generate the HTML report and return its path"""
        results = self.load_latest_results()
        scans = {name: payload["rows"] for name, payload in results["scans"].items()}
        charts = {name: self.create_scan_chart(rows) for name, rows in scans.items()}

        html_content = Template(HTML_TEMPLATE).render(
            timestamp=datetime.now().strftime("%Y-%m-%d %H:%M:%S"),
            scans=scans,
            scan_columns=["n", "sphere_size", "failures", "rate", "bound", "mode"],
            charts=charts,
            generations=results["generations"],
            validations=results["validations"],
            growths=results["growths"],
        )

        filename = filename or f"roughp_report_{datetime.now().strftime('%Y%m%d_%H%M%S')}.html"
        report_path = os.path.join(self.reports_dir, filename)
        with open(report_path, "w", encoding="utf-8") as f:
            f.write(html_content)
        logger.info(f"HTML report saved to {report_path}")
        return report_path


if __name__ == "__main__":
    print("🎨 Generating RoughP verification report...")
    generator = RoughPReportGenerator()
    html_report = generator.generate_html_report()
    print(f"✅ HTML report saved: {html_report}")
