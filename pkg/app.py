# Streamlit viewer for a scenario output directory
import streamlit as st

from tools.outputs import directory_digest, read_outputs


def main():
    st.title('Secretary Graph Explorer')
    out_dir = st.text_input('Output directory:', value='out')
    if not out_dir:
        return
    outputs = read_outputs(out_dir)
    if 'public' not in outputs:
        st.warning(f'No public.json in {out_dir}; run `python cli.py run --input <scenario> --out {out_dir}` first.')
        return

    public = outputs['public']
    st.caption(f"digest {directory_digest(out_dir)[:16]}")
    st.markdown("### Public view")
    st.write(f"{len(public['users'])} users, {len(public['snodes'])} secretaries, {len(public['edges'])} edges")
    if 'dot' in outputs:
        st.graphviz_chart(outputs['dot'])

    if 'metrics' in outputs:
        st.markdown("### Metrics")
        metrics = outputs['metrics']
        if metrics['analytic']:
            st.json(metrics['analytic'])
        st.json(metrics['empirical']['global'])

    st.markdown("### Attacks")
    for index, report in enumerate(outputs['attacks']):
        summary = report['summary']
        st.write(
            f"**#{index} {report['model']}**: {summary['edges']} edges, "
            f"success {summary['success_rate']:.3f} (expected {summary['expected_success']:.3f})"
        )
        with st.expander('Per-edge posteriors'):
            st.json(report['per_edge'])


if __name__ == '__main__':
    main()
