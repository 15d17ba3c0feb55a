// Client-side autocomplete over the corpus vocabulary. Exact-prefix only,
// mirroring the server's suggestion rule: no fuzzy matching.

export function normalizeItemName(raw: string): string {
  return raw.trim().replace(/\s+/g, " ").toLowerCase();
}

export function suggest(
  vocabulary: readonly string[],
  typed: string,
  limit = 8,
): string[] {
  const prefix = normalizeItemName(typed);
  if (!prefix) {
    return [];
  }
  const out: string[] = [];
  for (const name of vocabulary) {
    if (name.startsWith(prefix)) {
      out.push(name);
      if (out.length === limit) {
        break;
      }
    }
  }
  return out;
}
