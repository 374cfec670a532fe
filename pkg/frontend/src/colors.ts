/** Node color scheme: people green, companies blue, events orange. */

export const NODE_COLORS: Record<string, string> = {
  Person: "#2e8b57",
  Company: "#2f6fd6",
  Event: "#e8872a",
};

export const FALLBACK_COLOR = "#8a8f98";

export function nodeColor(label: string): string {
  return NODE_COLORS[label] ?? FALLBACK_COLOR;
}
