import json
from typing import List
import yaml


class OutputRenderer:
    def format(self, data: dict) -> str:
        raise NotImplementedError("Each renderer must implement the format method.")


class JsonRenderer(OutputRenderer):
    def format(self, data: dict) -> str:
        return json.dumps(data, indent=4) + "\n"


class YamlRenderer(OutputRenderer):
    def format(self, data: dict) -> str:
        # tuples are not safe_dump-able; a json round trip turns them into lists
        plain = json.loads(json.dumps(data))
        return yaml.safe_dump(plain, sort_keys=False, default_flow_style=False)


class TextRenderer(OutputRenderer):
    """Human-readable report; rhombal layouts are drawn as-is, everything else as indented yaml."""

    LAYOUT = "rhombal_layout"

    def format(self, data: dict) -> str:
        lines: List[str] = [f"command: {data.get('command')}"]
        if data.get("input"):
            lines.append(f"input:   {data['input']}")
        for key, value in data.get("header", {}).items():
            lines.append(f"{key}: {json.dumps(value)}")
        for stream in ("stdout", "stderr"):
            for status in data.get(stream, []):
                target = f" [{status['target']}]" if status.get("target") else ""
                lines.append("")
                lines.append(f"== {status['claim']}{target}: {status['status']}")
                lines.extend(self._body(status["claim"], status["output"]))
        lines.append("")
        lines.append(f"exit code: {data.get('exit_code', 0)}")
        return "\n".join(lines) + "\n"

    def _body(self, claim: str, output) -> List[str]:
        if claim == self.LAYOUT and isinstance(output, dict):
            body = []
            for title, rows in output.items():
                body.append(f"  {title}")
                body.extend(f"  {row}" for row in rows)
            return body
        if isinstance(output, str):
            return [f"  {output}"]
        text = yaml.safe_dump(json.loads(json.dumps(output)), sort_keys=False, default_flow_style=False)
        return [f"  {line}" for line in text.splitlines()]


class RendererFactory:
    renderers = {
        "json": JsonRenderer(),
        "text": TextRenderer(),
        "yaml": YamlRenderer(),
    }

    @staticmethod
    def get_renderer(output_format: str) -> OutputRenderer:
        return RendererFactory.renderers.get(output_format, JsonRenderer())
