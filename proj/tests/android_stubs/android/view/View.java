package android.view;

public class View {
    public static final int VISIBLE = 0;
    public static final int INVISIBLE = 4;
    public static final int GONE = 8;

    public interface OnClickListener {
        void onClick(View v);
    }

    public void setOnClickListener(OnClickListener listener) {
    }

    public void setEnabled(boolean enabled) {
    }

    public void setVisibility(int visibility) {
    }
}
