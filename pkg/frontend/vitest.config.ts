import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["tests/**/*.test.ts"],
    // most suites exercise pure functions; DOM-backed suites opt into
    // happy-dom with a @vitest-environment pragma
    environment: "node",
  },
});
